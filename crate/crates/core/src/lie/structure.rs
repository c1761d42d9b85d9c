use num_traits::Zero;

use crate::linalg::{nullspace, zero_vec, CoordinateMap, MatrixQ, Rational, SubspaceBasis, VecQ};
use crate::{Error, Result};

/// Sparse structure constants: `[e_i, e_j] = sum_k c[i][j][k] e_k`.
///
/// Both orders of every pair are stored so lookups never branch on `i < j`;
/// writes go through [`StructureConstants::set_bracket`], which keeps the
/// table antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    /// The abelian bracket on `dim` generators.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds the table from a function giving `[e_i, e_j]` for `i < j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> VecQ) -> Self {
        let mut s = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                s.set_bracket_vec(i, j, &v);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_i, e_j]` (and hence `[e_j, e_i]`). Zero coefficients are dropped.
    pub fn set_bracket(&mut self, i: usize, j: usize, terms: Vec<(usize, Rational)>) {
        assert!(i != j, "[e_i, e_i] is always zero");
        let mut terms: Vec<(usize, Rational)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| t.0);
        let neg = terms.iter().map(|(k, c)| (*k, -c)).collect();
        self.table[i * self.dim + j] = terms;
        self.table[j * self.dim + i] = neg;
    }

    pub fn set_bracket_vec(&mut self, i: usize, j: usize, v: &[Rational]) {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        self.set_bracket(i, j, terms);
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_bracket_vec(&self, i: usize, j: usize) -> VecQ {
        let mut v = zero_vec(self.dim);
        for (k, c) in self.basis_bracket(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Nonzero constants with `i < j`, in `(i, j, k)` order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        (0..self.dim).flat_map(move |i| {
            (i + 1..self.dim).flat_map(move |j| {
                self.basis_bracket(i, j)
                    .iter()
                    .map(move |(k, c)| (i, j, *k, c))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> VecQ {
        assert_eq!(x.len(), self.dim, "bracket argument length");
        assert_eq!(y.len(), self.dim, "bracket argument length");
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = self.basis_bracket(i, j);
                if t.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in t {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad(&self, x: &[Rational]) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..self.dim {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.basis_bracket(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// `[[e_i, e_j], e_k]` as a dense vector.
    fn double_bracket(&self, i: usize, j: usize, k: usize, out: &mut VecQ) {
        for (l, c) in self.basis_bracket(i, j) {
            for (m, d) in self.basis_bracket(*l, k) {
                out[*m] += c * d;
            }
        }
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut acc = zero_vec(self.dim);
                    self.double_bracket(i, j, k, &mut acc);
                    self.double_bracket(j, k, i, &mut acc);
                    self.double_bracket(k, i, j, &mut acc);
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Err(Error::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `{x in within : [x, s] = 0 for every s in the basis of s}`.
    pub fn centralizer(&self, s: &SubspaceBasis, within: &SubspaceBasis) -> Result<SubspaceBasis> {
        for sub in [s, within] {
            if sub.ambient_dim() != self.dim {
                return Err(Error::AmbientMismatch(sub.ambient_dim(), self.dim));
            }
        }
        if s.is_zero() || within.is_zero() {
            return Ok(within.clone());
        }
        // column i of each block is [w_i, s_j]
        let w = within.vectors();
        let mut rows = MatrixQ::zeros(0, w.len());
        for sv in s.vectors() {
            let cols: Vec<VecQ> = w.iter().map(|wi| self.bracket(wi, sv)).collect();
            rows = rows.vstack(&MatrixQ::from_columns(&cols, self.dim));
        }
        let ns = nullspace(&rows);
        let vectors: Vec<VecQ> = ns
            .vectors()
            .iter()
            .map(|coeffs| crate::linalg::combine(coeffs, w, self.dim))
            .collect();
        Ok(SubspaceBasis::span(self.dim, vectors))
    }

    /// Smallest bracket-closed subspace containing `seed`.
    pub fn subalgebra_generated(&self, seed: &SubspaceBasis) -> SubspaceBasis {
        let mut current = seed.clone();
        loop {
            let vs = current.vectors();
            let mut candidates = vs.to_vec();
            for (a, x) in vs.iter().enumerate() {
                for y in &vs[a + 1..] {
                    candidates.push(self.bracket(x, y));
                }
            }
            let next = SubspaceBasis::span(self.dim, candidates);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// Whether the span of `sub` is closed under the bracket.
    pub fn is_subalgebra(&self, sub: &SubspaceBasis) -> bool {
        let vs = sub.vectors();
        vs.iter().enumerate().all(|(a, x)| {
            vs[a + 1..]
                .iter()
                .all(|y| sub.contains(&self.bracket(x, y)))
        })
    }

    /// Checks `d[x, y] = [dx, y] + [x, dy]` on all basis pairs; returns the first failing pair.
    pub fn derivation_failure(&self, d: &MatrixQ) -> Option<(usize, usize)> {
        assert_eq!(
            (d.rows(), d.cols()),
            (self.dim, self.dim),
            "derivation shape"
        );
        let cols = d.columns();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = d.mul_vec(&self.basis_bracket_vec(i, j));
                let mut rhs = zero_vec(self.dim);
                for (l, c) in cols[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (k, e) in self.basis_bracket(l, j) {
                        rhs[*k] += c * e;
                    }
                }
                for (l, c) in cols[j].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (k, e) in self.basis_bracket(i, l) {
                        rhs[*k] += c * e;
                    }
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, d: &MatrixQ) -> bool {
        self.derivation_failure(d).is_none()
    }

    /// Restriction of the bracket to a subalgebra, in the coordinates of `basis`.
    pub fn restrict(&self, basis: &SubspaceBasis) -> Result<StructureConstants> {
        let map = CoordinateMap::new(basis);
        let vs = basis.vectors();
        let mut out = StructureConstants::zero(vs.len());
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let coords = map.coords(&self.bracket(&vs[a], &vs[b])).ok_or_else(|| {
                    Error::NotClosed(format!("bracket of basis vectors {a}, {b}"))
                })?;
                out.set_bracket_vec(a, b, &coords);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, unit_vec};

    /// sl(2) in the basis (H, E, F).
    pub(crate) fn sl2() -> StructureConstants {
        let mut s = StructureConstants::zero(3);
        s.set_bracket(0, 1, vec![(1, q(2))]);
        s.set_bracket(0, 2, vec![(2, q(-2))]);
        s.set_bracket(1, 2, vec![(0, q(1))]);
        s
    }

    #[test]
    fn sl2_relations() {
        let s = sl2();
        assert_eq!(
            s.bracket(&unit_vec(3, 0), &unit_vec(3, 1)),
            vec![q(0), q(2), q(0)]
        );
        assert_eq!(
            s.bracket(&unit_vec(3, 1), &unit_vec(3, 2)),
            vec![q(1), q(0), q(0)]
        );
        assert_eq!(s.ad_basis(0), MatrixQ::diag(&[q(0), q(2), q(-2)]));
        assert!(s.check_jacobi().is_ok());
    }

    #[test]
    fn broken_jacobi_detected() {
        let mut s = sl2();
        s.set_bracket(1, 2, vec![(0, q(1)), (1, q(1))]);
        assert_eq!(s.check_jacobi(), Err(Error::JacobiViolation(0, 1, 2)));
    }

    #[test]
    fn generated_subalgebra() {
        let s = sl2();
        let seed = SubspaceBasis::span(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(s.subalgebra_generated(&seed).dim(), 3);
        assert!(s.subalgebra_generated(&SubspaceBasis::zero(3)).is_zero());
    }

    #[test]
    fn ad_is_a_derivation() {
        let s = sl2();
        for i in 0..3 {
            assert!(s.is_derivation(&s.ad_basis(i)));
        }
        assert!(!s.is_derivation(&MatrixQ::identity(3)));
    }
}
