use serde::{Deserialize, Serialize};

use super::{LieAlgebra, StructureConstants};
use crate::linalg::{fmt_rational, parse_rational, MatrixQ, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// On-disk form of a Lie algebra: sparse structure constants `[i, j, k, num, den]`
/// with `i < j`, and theta as a dense matrix of `"p/q"` strings.
///
/// `name` and `a_basis` are optional extras: a display name and the
/// designated abelian subspace (rows are vectors in basis coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure_constants: Vec<[i64; 5]>,
    pub theta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_basis: Option<Vec<Vec<String>>>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Serialization(format!("structure constant part {x} exceeds 64 bits")))
}

pub(crate) fn matrix_to_strings(m: &MatrixQ) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(fmt_rational).collect())
        .collect()
}

pub(crate) fn strings_to_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

impl AlgebraJson {
    pub fn from_algebra(g: &LieAlgebra) -> Result<Self> {
        let structure_constants = g
            .structure()
            .triples()
            .map(|(i, j, k, c)| {
                Ok([
                    i as i64,
                    j as i64,
                    k as i64,
                    small(c.numer())?,
                    small(c.denom())?,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            name: None,
            dim: g.dim(),
            labels: g.labels().to_vec(),
            structure_constants,
            theta: matrix_to_strings(g.theta()),
            a_basis: None,
        })
    }

    /// Rebuilds and revalidates the algebra.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let dim = self.dim;
        let mut terms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim * dim];
        for &[i, j, k, num, den] in &self.structure_constants {
            let idx = |x: i64| -> Result<usize> {
                usize::try_from(x).ok().filter(|&u| u < dim).ok_or_else(|| {
                    Error::Parse(format!("basis index {x} out of range for dimension {dim}"))
                })
            };
            let (i, j, k) = (idx(i)?, idx(j)?, idx(k)?);
            if i >= j {
                return Err(Error::NotAntisymmetric(i, j));
            }
            if den == 0 {
                return Err(Error::Parse(
                    "zero denominator in structure constant".into(),
                ));
            }
            terms[i * dim + j].push((k, Rational::new(num.into(), den.into())));
        }
        let mut s = StructureConstants::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let t = std::mem::take(&mut terms[i * dim + j]);
                let mut seen = std::collections::HashSet::new();
                if t.iter().any(|(k, _)| !seen.insert(*k)) {
                    return Err(Error::Parse(format!(
                        "duplicate structure constant for ({i}, {j})"
                    )));
                }
                s.set_bracket(i, j, t);
            }
        }
        let rows = strings_to_rows(&self.theta)?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!("theta must be {dim}x{dim}")));
        }
        LieAlgebra::new(self.labels.clone(), s, MatrixQ::from_rows(rows))
    }

    pub fn to_string_pretty(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::tests::sl2;

    #[test]
    fn round_trip_is_exact() {
        let g = sl2();
        let j = AlgebraJson::from_algebra(&g).unwrap();
        let text = j.to_string_pretty().unwrap();
        let back = AlgebraJson::from_str(&text).unwrap();
        assert_eq!(back, j);
        let h = back.to_algebra().unwrap();
        assert!(h.same_algebra(&g));
        assert_eq!(h.killing(), g.killing());
    }

    #[test]
    fn lower_triangle_triples_rejected() {
        let mut j = AlgebraJson::from_algebra(&sl2()).unwrap();
        j.structure_constants.push([2, 1, 0, 1, 1]);
        assert_eq!(j.to_algebra().unwrap_err(), Error::NotAntisymmetric(2, 1));
    }
}
