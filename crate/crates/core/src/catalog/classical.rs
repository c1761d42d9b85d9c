use num_traits::Zero;

use crate::lie::{LieAlgebra, StructureConstants};
use crate::linalg::{q, CoordinateMap, MatrixQ, SubspaceBasis, VecQ};
use crate::{Error, Result};

/// Real `s x s` matrices of left multiplication by the units of R, C or H.
fn units(s: usize) -> Vec<MatrixQ> {
    let one = MatrixQ::identity(s);
    match s {
        1 => vec![one],
        2 => vec![one, MatrixQ::from_i64(&[&[0, -1], &[1, 0]])],
        4 => vec![
            one,
            MatrixQ::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
            MatrixQ::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]),
            MatrixQ::from_i64(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]),
        ],
        _ => unreachable!("only R, C and H are realified"),
    }
}

const UNIT_NAMES: [&str; 4] = ["", "i", "j", "k"];

/// A matrix over R, C or H with entries `coef * unit`, realified into `n*s x n*s`.
struct HyperMatrix {
    n: usize,
    s: usize,
    entries: Vec<(usize, usize, usize, i64)>,
}

impl HyperMatrix {
    fn realify(&self, units: &[MatrixQ]) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.n * self.s, self.n * self.s);
        for &(i, j, u, c) in &self.entries {
            let block = units[u].scale(&q(c));
            for r in 0..self.s {
                for col in 0..self.s {
                    m[(i * self.s + r, j * self.s + col)] += &block[(r, col)];
                }
            }
        }
        m
    }
}

fn e_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E({},{})", i + 1, j + 1)
    }
}

fn unit_prefix(u: usize) -> String {
    if u == 0 {
        String::new()
    } else {
        UNIT_NAMES[u].to_string()
    }
}

/// Matrix algebra data before conversion to structure constants.
pub(crate) struct MatrixBasis {
    pub labels: Vec<String>,
    pub matrices: Vec<MatrixQ>,
    pub a: Vec<MatrixQ>,
}

/// `u(p, q; F)` for F of real dimension `s` (1, 2, 4), with the standard
/// basis adapted to the block form. With `traceless` the diagonal is
/// restricted to trace zero (the `su` case).
pub(crate) fn unitary_type(p: usize, q_: usize, s: usize, traceless: bool) -> MatrixBasis {
    let n = p + q_;
    let us = units(s);
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut push = |label: String, entries: Vec<(usize, usize, usize, i64)>| {
        labels.push(label);
        mats.push(HyperMatrix { n, s, entries }.realify(&us));
    };

    // diagonal imaginary part
    for u in 1..s {
        if traceless {
            for k in 0..n.saturating_sub(1) {
                push(
                    format!(
                        "{}({}-{})",
                        unit_prefix(u),
                        e_name(k, k, n),
                        e_name(k + 1, k + 1, n)
                    ),
                    vec![(k, k, u, 1), (k + 1, k + 1, u, -1)],
                );
            }
        } else {
            for k in 0..n {
                push(
                    format!("{}{}", unit_prefix(u), e_name(k, k, n)),
                    vec![(k, k, u, 1)],
                );
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let cross = i < p && j >= p;
            for u in 0..s {
                // real unit: antisymmetric in-block, symmetric across; imaginary units flip
                let sign = if cross == (u == 0) { 1 } else { -1 };
                let op = if sign == 1 { '+' } else { '-' };
                push(
                    format!(
                        "{}({}{op}{})",
                        unit_prefix(u),
                        e_name(i, j, n),
                        e_name(j, i, n)
                    ),
                    vec![(i, j, u, 1), (j, i, u, sign)],
                );
            }
        }
    }
    for label in labels.iter_mut() {
        if let Some(inner) = label.strip_prefix('(').and_then(|l| l.strip_suffix(')')) {
            *label = inner.to_string();
        }
    }
    let a = (0..p)
        .map(|i| {
            HyperMatrix {
                n,
                s,
                entries: vec![(i, p + i, 0, 1), (p + i, i, 0, 1)],
            }
            .realify(&us)
        })
        .collect();
    MatrixBasis {
        labels,
        matrices: mats,
        a,
    }
}

/// `sl(n, R)`: off-diagonal units then `E_kk - E_{k+1,k+1}`; a is the diagonal.
pub(crate) fn sl_r(n: usize) -> MatrixBasis {
    let unit = |i: usize, j: usize| {
        let mut m = MatrixQ::zeros(n, n);
        m[(i, j)] = q(1);
        m
    };
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    let mut a = Vec::new();
    for k in 0..n - 1 {
        labels.push(format!("{}-{}", e_name(k, k, n), e_name(k + 1, k + 1, n)));
        let h = &unit(k, k) - &unit(k + 1, k + 1);
        a.push(h.clone());
        matrices.push(h);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(e_name(i, j, n));
                matrices.push(unit(i, j));
            }
        }
    }
    MatrixBasis {
        labels,
        matrices,
        a,
    }
}

/// Coordinates of a matrix in the span of the basis matrices.
struct Coordinates(CoordinateMap);

impl Coordinates {
    fn new(matrices: &[MatrixQ]) -> Self {
        let size = matrices[0].rows() * matrices[0].cols();
        let basis = SubspaceBasis::span(size, matrices.iter().map(MatrixQ::flatten));
        assert_eq!(
            basis.dim(),
            matrices.len(),
            "matrix basis is linearly dependent"
        );
        Self(CoordinateMap::new(&basis))
    }

    fn coords(&self, m: &MatrixQ, what: &str) -> Result<VecQ> {
        self.0
            .coords(&m.flatten())
            .ok_or_else(|| Error::NotClosed(format!("{what} leaves the span of the basis")))
    }
}

/// Structure constants, theta X = -X^T, and the designated a in basis coordinates.
pub(crate) fn to_algebra(mb: &MatrixBasis) -> Result<(LieAlgebra, SubspaceBasis)> {
    let d = mb.matrices.len();
    let coords = Coordinates::new(&mb.matrices);
    let mut err = None;
    let structure = StructureConstants::from_fn(d, |i, j| {
        let br = mb.matrices[i].commutator(&mb.matrices[j]);
        coords.coords(&br, "bracket").unwrap_or_else(|e| {
            err.get_or_insert(e);
            vec![Zero::zero(); d]
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let theta_cols = mb
        .matrices
        .iter()
        .map(|m| coords.coords(&-&m.transpose(), "theta"))
        .collect::<Result<Vec<_>>>()?;
    let theta = MatrixQ::from_columns(&theta_cols, d);
    let a_vecs =
        mb.a.iter()
            .map(|m| coords.coords(m, "designated a"))
            .collect::<Result<Vec<_>>>()?;
    let a = SubspaceBasis::span(d, a_vecs);
    if a.dim() != mb.a.len() {
        return Err(Error::BadCartanSubspace(
            "designated vectors are dependent".into(),
        ));
    }
    let g = LieAlgebra::new(mb.labels.clone(), structure, theta)?;
    Ok((g, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_units_multiply() {
        let u = units(4);
        let (i, j, k) = (&u[1], &u[2], &u[3]);
        let minus_one = MatrixQ::identity(4).scale(&q(-1));
        assert_eq!(i * j, *k);
        assert_eq!(j * k, *i);
        assert_eq!(k * i, *j);
        assert_eq!(i * i, minus_one);
        assert_eq!(j * j, minus_one);
        assert_eq!(k * k, minus_one);
        for x in [i, j, k] {
            assert_eq!(x.transpose(), -x);
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(unitary_type(1, 3, 1, false).matrices.len(), 6);
        assert_eq!(unitary_type(1, 2, 2, true).matrices.len(), 8);
        assert_eq!(unitary_type(1, 2, 4, false).matrices.len(), 21);
        assert_eq!(sl_r(3).matrices.len(), 8);
    }

    #[test]
    fn unitary_basis_preserves_the_form() {
        // X^T I_pq + I_pq X = 0 on the realified matrices
        for (p, q_, s, tl) in [(1, 3, 1, false), (2, 3, 2, true), (1, 2, 4, false)] {
            let mb = unitary_type(p, q_, s, tl);
            let size = (p + q_) * s;
            let ipq = MatrixQ::diag(
                &(0..size)
                    .map(|r| if r < p * s { q(-1) } else { q(1) })
                    .collect::<Vec<_>>(),
            );
            for m in mb.matrices.iter().chain(&mb.a) {
                assert!((&(&m.transpose() * &ipq) + &(&ipq * m)).is_zero());
            }
        }
    }
}
