use num_traits::{One, Zero};

use super::{nullspace, solve_matrix, MatrixQ, Poly, Rational, SubspaceBasis};
use crate::{Error, Result};

/// Characteristic polynomial `det(xI - m)` via reduction to upper Hessenberg form.
pub fn characteristic_polynomial(m: &MatrixQ) -> Poly {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        let target = col + 1;
        if piv != target {
            for j in 0..n {
                let t = h[(piv, j)].clone();
                h[(piv, j)] = std::mem::replace(&mut h[(target, j)], t);
            }
            for i in 0..n {
                let t = h[(i, piv)].clone();
                h[(i, piv)] = std::mem::replace(&mut h[(i, target)], t);
            }
        }
        let p = h[(target, col)].clone();
        for i in target + 1..n {
            if h[(i, col)].is_zero() {
                continue;
            }
            let u = &h[(i, col)] / &p;
            for j in 0..n {
                let d = &u * &h[(target, j)];
                h[(i, j)] -= d;
            }
            for r in 0..n {
                let d = &u * &h[(r, i)];
                h[(r, target)] += d;
            }
        }
    }

    // p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod of subdiagonal) p_{k-i-1}
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for k in 0..n {
        let mut pk = ps[k].mul(&Poly::linear_root(&h[(k, k)]));
        let mut sub = Rational::one();
        for i in 1..=k {
            sub *= &h[(k - i + 1, k - i)];
            if sub.is_zero() {
                break;
            }
            let coef = &h[(k - i, k)] * &sub;
            if !coef.is_zero() {
                pk = pk.sub(&ps[k - i].scale(&coef));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

/// `{x : m x = lambda x}`.
pub fn eigenspace(m: &MatrixQ, lambda: &Rational) -> SubspaceBasis {
    let shifted = m - &MatrixQ::identity(m.rows()).scale(lambda);
    nullspace(&shifted)
}

/// Distinct rational eigenvalues, ascending, without multiplicities.
pub fn rational_eigenvalues(m: &MatrixQ) -> Result<Vec<Rational>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "{}x{} matrix has no eigenvalues",
            m.rows(),
            m.cols()
        )));
    }
    if m.is_diagonal() {
        let mut vals: Vec<Rational> = (0..m.rows()).map(|i| m[(i, i)].clone()).collect();
        vals.sort();
        vals.dedup();
        return Ok(vals);
    }
    characteristic_polynomial(m).rational_roots()
}

/// Eigenvalues of a matrix with their eigenspaces, and whether they fill the space.
#[derive(Clone, Debug)]
pub struct EigenSplit {
    pub eigenvalues: Vec<Rational>,
    pub spaces: Vec<SubspaceBasis>,
    pub size: usize,
}

impl EigenSplit {
    pub fn compute(m: &MatrixQ) -> Result<Self> {
        let eigenvalues = rational_eigenvalues(m)?;
        let spaces = eigenvalues.iter().map(|l| eigenspace(m, l)).collect();
        Ok(Self {
            eigenvalues,
            spaces,
            size: m.rows(),
        })
    }

    pub fn split_dim(&self) -> usize {
        self.spaces.iter().map(SubspaceBasis::dim).sum()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.split_dim() == self.size
    }

    /// Fails with `NotDiagonalizableOverQ` unless the eigenspaces span everything.
    pub fn require_full(self) -> Result<Self> {
        if self.is_diagonalizable() {
            Ok(self)
        } else {
            Err(Error::NotDiagonalizableOverQ {
                found: self.split_dim(),
                size: self.size,
            })
        }
    }
}

/// A joint eigenspace labelled by one eigenvalue per input matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlock {
    pub values: Vec<Rational>,
    pub space: SubspaceBasis,
}

/// Splits the ambient space into joint eigenspaces of pairwise commuting matrices.
/// Blocks are sorted by their eigenvalue tuples.
pub fn simultaneous_eigenspaces(ms: &[MatrixQ]) -> Result<Vec<EigenBlock>> {
    let Some(first) = ms.first() else {
        return Err(Error::Shape("no matrices to split by".into()));
    };
    let n = first.rows();
    for m in ms {
        if !m.is_square() || m.rows() != n {
            return Err(Error::Shape(format!(
                "expected {n}x{n}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if !ms[i].commutator(&ms[j]).is_zero() {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }

    let mut blocks = vec![EigenBlock {
        values: Vec::new(),
        space: SubspaceBasis::full(n),
    }];
    for m in ms {
        let mut next = Vec::new();
        for block in blocks {
            let v = block.space.as_column_matrix();
            // restriction of m to the invariant block, in block coordinates
            let r = solve_matrix(&v, &(m * &v)).ok_or_else(|| Error::NotCommuting(0, 0))?;
            let split = EigenSplit::compute(&r)?.require_full()?;
            for (lambda, sub) in split.eigenvalues.into_iter().zip(split.spaces) {
                let vectors = sub.vectors().iter().map(|c| v.mul_vec(c)).collect();
                let mut values = block.values.clone();
                values.push(lambda);
                next.push(EigenBlock {
                    values,
                    space: SubspaceBasis::from_independent(n, vectors),
                });
            }
        }
        blocks = next;
    }
    blocks.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    #[test]
    fn diagonal_eigenvalues() {
        let m = MatrixQ::diag(&[q(1), q(2)]);
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![q(1), q(2)]);
        let m = MatrixQ::diag(&[qf(1, 2), qf(1, 2), q(-1)]);
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![q(-1), qf(1, 2)]);
    }

    #[test]
    fn jordan_block_not_diagonalizable() {
        let m = MatrixQ::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![q(0)]);
        let err = EigenSplit::compute(&m).unwrap().require_full().unwrap_err();
        assert_eq!(err, Error::NotDiagonalizableOverQ { found: 1, size: 2 });
    }

    #[test]
    fn charpoly_matches_known() {
        // companion matrix of (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let m = MatrixQ::from_i64(&[&[0, 0, -6], &[1, 0, 7], &[0, 1, 0]]);
        let p = characteristic_polynomial(&m);
        assert_eq!(p.coeffs(), &[q(6), q(-7), q(0), q(1)]);
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![q(-3), q(1), q(2)]);
    }

    #[test]
    fn charpoly_needs_row_swap() {
        let m = MatrixQ::from_i64(&[&[1, 2, 3], &[0, 4, 5], &[7, 0, 6]]);
        let p = characteristic_polynomial(&m);
        // det(xI - m) at x = 0 is -det(m) = -(1*24 - 2*(-35) + 3*(-28)) = -10
        assert_eq!(p.eval(&q(0)), q(-10));
        assert_eq!(p.coeffs()[2], q(-11));
    }

    #[test]
    fn simultaneous_examples() {
        let blocks = simultaneous_eigenspaces(&[MatrixQ::diag(&[q(1), q(1), q(2)])]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(
            (blocks[0].values.clone(), blocks[0].space.dim()),
            (vec![q(1)], 2)
        );
        assert_eq!(
            (blocks[1].values.clone(), blocks[1].space.dim()),
            (vec![q(2)], 1)
        );

        let blocks =
            simultaneous_eigenspaces(&[MatrixQ::diag(&[q(1), q(2)]), MatrixQ::diag(&[q(3), q(3)])])
                .unwrap();
        let labels: Vec<_> = blocks
            .iter()
            .map(|b| (b.values.clone(), b.space.dim()))
            .collect();
        assert_eq!(labels, vec![(vec![q(1), q(3)], 1), (vec![q(2), q(3)], 1)]);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = MatrixQ::from_i64(&[&[1, 0], &[0, 2]]);
        let b = MatrixQ::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(&[a, b]).unwrap_err(),
            Error::NotCommuting(0, 1)
        );
    }
}
