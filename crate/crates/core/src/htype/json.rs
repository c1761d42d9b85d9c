use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::MetricTwoStep;
use crate::lie::json::{matrix_to_strings, strings_to_rows};
use crate::linalg::{MatrixQ, Rational};
use crate::{Error, Result};

/// On-disk form of a metric two-step algebra: brackets as sparse
/// `[i, j, k, num, den]` meaning `[v_i, v_j]` has `num/den` on `z_k` (`i < j`),
/// Gram matrices as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricTwoStepJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub v_dim: usize,
    pub z_dim: usize,
    pub bracket: Vec<[i64; 5]>,
    pub gram_v: Vec<Vec<String>>,
    pub gram_z: Vec<Vec<String>>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| {
        Error::Serialization(format!("bracket coefficient part {x} exceeds 64 bits"))
    })
}

impl MetricTwoStepJson {
    pub fn from_algebra(m: &MetricTwoStep) -> Result<Self> {
        let mut bracket = Vec::new();
        for i in 0..m.v_dim() {
            for j in i + 1..m.v_dim() {
                for (k, c) in m.bracket_tensor(i, j).iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        bracket.push([
                            i as i64,
                            j as i64,
                            k as i64,
                            small(c.numer())?,
                            small(c.denom())?,
                        ]);
                    }
                }
            }
        }
        Ok(Self {
            name: None,
            v_dim: m.v_dim(),
            z_dim: m.z_dim(),
            bracket,
            gram_v: matrix_to_strings(m.gram_v()),
            gram_z: matrix_to_strings(m.gram_z()),
        })
    }

    pub fn to_algebra(&self) -> Result<MetricTwoStep> {
        let mut triples = Vec::with_capacity(self.bracket.len());
        for &[i, j, k, num, den] in &self.bracket {
            let idx = |x: i64| {
                usize::try_from(x).map_err(|_| Error::Parse(format!("negative index {x}")))
            };
            if den == 0 {
                return Err(Error::Parse("zero denominator in bracket".into()));
            }
            triples.push((
                idx(i)?,
                idx(j)?,
                idx(k)?,
                Rational::new(num.into(), den.into()),
            ));
        }
        let square = |rows: &[Vec<String>], n: usize, what: &str| -> Result<MatrixQ> {
            let rows = strings_to_rows(rows)?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Shape(format!("{what} must be {n}x{n}")));
            }
            Ok(if n == 0 {
                MatrixQ::zeros(0, 0)
            } else {
                MatrixQ::from_rows(rows)
            })
        };
        MetricTwoStep::new(
            self.v_dim,
            self.z_dim,
            &triples,
            square(&self.gram_v, self.v_dim, "gram_v")?,
            square(&self.gram_z, self.z_dim, "gram_z")?,
        )
    }

    pub fn to_string_pretty(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
