//! Derivations of `n`: the block-structured linear solver, comparison with
//! `ad(m + a)`, the E-identities, and extension of skew derivations to `g`.

mod ad;
mod extension;

pub use ad::{
    ad_restriction, main_theorem_verdict, reconstruct_w, reconstruct_w_with, split_sym_skew,
    AdImage, Reconstruction, Verdict,
};
pub use extension::{build_extension, check_e_identity, EReport, Extension};

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lie::StructureConstants;
use crate::linalg::{nullspace, MatrixQ, Rational, SubspaceBasis, VecQ};
use crate::roots::{CheckReport, RootDatum, RootedNilpotent};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintMode {
    Unconstrained,
    /// Preserves each height level of `n`.
    Grading,
    /// Preserves each positive root space.
    RootSpace,
}

impl fmt::Display for ConstraintMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Unconstrained => "all",
            Self::Grading => "grading",
            Self::RootSpace => "rootspace",
        })
    }
}

impl FromStr for ConstraintMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "unconstrained" => Ok(Self::Unconstrained),
            "grading" => Ok(Self::Grading),
            "rootspace" | "root_space" => Ok(Self::RootSpace),
            _ => Err(Error::Parse(format!(
                "unknown mode {s:?}; expected all, grading or rootspace"
            ))),
        }
    }
}

/// A rectangle of allowed matrix entries: `rows x cols`.
pub type Block = (Range<usize>, Range<usize>);

/// Basis of the derivations of `s` whose nonzero entries lie inside `blocks`.
///
/// `relevant(i, j)` may exclude basis pairs whose derivation equations are
/// known to vanish identically; pass `|_, _| true` to keep every pair.
pub fn derivations_in_blocks(
    s: &StructureConstants,
    blocks: &[Block],
    relevant: impl Fn(usize, usize) -> bool,
) -> Vec<MatrixQ> {
    let n = s.dim();
    let mut unknown = vec![None; n * n];
    let mut cells = Vec::new();
    for (rows, cols) in blocks {
        for r in rows.clone() {
            for c in cols.clone() {
                if unknown[r * n + c].is_none() {
                    unknown[r * n + c] = Some(cells.len());
                    cells.push((r, c));
                }
            }
        }
    }
    let count = cells.len();
    if count == 0 {
        return Vec::new();
    }

    let mut seen: HashSet<Vec<(usize, Rational)>> = HashSet::new();
    let mut rows: Vec<VecQ> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !relevant(i, j) {
                continue;
            }
            // component k of D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j]
            let mut eqs: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
            let mut add = |k: usize, r: usize, c: usize, coef: &Rational| {
                if let Some(u) = unknown[r * n + c] {
                    *eqs[k].entry(u).or_insert_with(Rational::zero) += coef;
                }
            };
            for (l, c) in s.basis_bracket(i, j) {
                for k in 0..n {
                    add(k, k, *l, c);
                }
            }
            for l in 0..n {
                for (k, c) in s.basis_bracket(l, j) {
                    add(*k, l, i, &-c);
                }
                for (k, c) in s.basis_bracket(i, l) {
                    add(*k, l, j, &-c);
                }
            }
            for eq in eqs {
                let sparse: Vec<(usize, Rational)> =
                    eq.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if sparse.is_empty() || !seen.insert(sparse.clone()) {
                    continue;
                }
                let mut row = vec![Rational::zero(); count];
                for (u, c) in sparse {
                    row[u] = c;
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        MatrixQ::zeros(0, count)
    } else {
        MatrixQ::from_rows(rows)
    };
    nullspace(&system)
        .vectors()
        .iter()
        .map(|x| {
            let mut d = MatrixQ::zeros(n, n);
            for (u, &(r, c)) in cells.iter().enumerate() {
                d[(r, c)] = x[u].clone();
            }
            d
        })
        .collect()
}

/// Every derivation of `s`, with no block structure.
pub fn all_derivations(s: &StructureConstants) -> Vec<MatrixQ> {
    let n = s.dim();
    derivations_in_blocks(s, &[(0..n, 0..n)], |_, _| true)
}

/// A basis of derivations of `n` under a constraint mode.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    n_dim: usize,
    mode: ConstraintMode,
    basis: Vec<MatrixQ>,
    blocks: Vec<Block>,
    summand_dims: Vec<usize>,
    flat: SubspaceBasis,
}

impl DerivationSpace {
    fn new(
        n_dim: usize,
        mode: ConstraintMode,
        basis: Vec<MatrixQ>,
        blocks: Vec<Block>,
        summand_dims: Vec<usize>,
    ) -> Self {
        let flat = SubspaceBasis::span(n_dim * n_dim, basis.iter().map(MatrixQ::flatten));
        assert_eq!(flat.dim(), basis.len(), "derivation basis is dependent");
        Self {
            n_dim,
            mode,
            basis,
            blocks,
            summand_dims,
            flat,
        }
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn mode(&self) -> ConstraintMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatrixQ] {
        &self.basis
    }

    /// The allowed blocks of the mode.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Dimensions per simple summand, when the space was assembled from them.
    pub fn summand_dims(&self) -> &[usize] {
        &self.summand_dims
    }

    pub fn contains(&self, d: &MatrixQ) -> bool {
        d.rows() == self.n_dim && d.cols() == self.n_dim && self.flat.contains(&d.flatten())
    }

    /// Whether `d` is zero outside the allowed blocks.
    pub fn respects_blocks(&self, d: &MatrixQ) -> bool {
        respects_blocks(d, &self.blocks)
    }

    /// Coordinates of `d` over the basis.
    pub fn coordinates(&self, d: &MatrixQ) -> Option<VecQ> {
        self.flat.coordinates(&d.flatten())
    }

    pub fn combination(&self, coeffs: &[Rational]) -> MatrixQ {
        let mut out = MatrixQ::zeros(self.n_dim, self.n_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }
}

pub(crate) fn respects_blocks(d: &MatrixQ, blocks: &[Block]) -> bool {
    (0..d.rows()).all(|r| {
        (0..d.cols()).all(|c| {
            d[(r, c)].is_zero()
                || blocks
                    .iter()
                    .any(|(rs, cs)| rs.contains(&r) && cs.contains(&c))
        })
    })
}

pub fn mode_blocks(nil: &RootedNilpotent, mode: ConstraintMode) -> Vec<Block> {
    match mode {
        ConstraintMode::Unconstrained => vec![(0..nil.dim(), 0..nil.dim())],
        ConstraintMode::Grading => nil
            .level_ranges()
            .into_iter()
            .map(|r| (r.clone(), r))
            .collect(),
        ConstraintMode::RootSpace => nil.blocks().into_iter().map(|r| (r.clone(), r)).collect(),
    }
}

/// Derivations of a root-space-spanned nilpotent algebra.
pub fn solve_on(nil: &RootedNilpotent, mode: ConstraintMode) -> DerivationSpace {
    let blocks = mode_blocks(nil, mode);
    let basis = if mode == ConstraintMode::RootSpace {
        let owner: Vec<usize> = (0..nil.root_count())
            .flat_map(|i| nil.block(i).map(move |_| i))
            .collect();
        derivations_in_blocks(nil.structure(), &blocks, |a, b| {
            nil.sum_index(owner[a], owner[b]).is_some()
        })
    } else {
        derivations_in_blocks(nil.structure(), &blocks, |_, _| true)
    };
    DerivationSpace::new(nil.dim(), mode, basis, blocks, Vec::new())
}

/// Copies a root-space-preserving matrix on a sub-slice into the coordinates of `full`.
fn embed_blocks(sub: &RootedNilpotent, full: &RootedNilpotent, d: &MatrixQ) -> MatrixQ {
    let mut out = MatrixQ::zeros(full.dim(), full.dim());
    for a in 0..sub.root_count() {
        let target = full.root_index(sub.root(a)).expect("slice root lies in n");
        let (src, dst) = (sub.block(a), full.block(target));
        let idx: Vec<usize> = src.clone().collect();
        out.set_block(dst.start, dst.start, &d.select(&idx, &idx));
    }
    out
}

/// Derivations of `n` under `mode`. A decomposable root system in root-space
/// mode is solved one simple summand at a time, with cross blocks zero.
pub fn solve_derivations(rd: &RootDatum, mode: ConstraintMode) -> Result<DerivationSpace> {
    let full = rd.nilpotent();
    if mode != ConstraintMode::RootSpace || !rd.is_decomposable() {
        return Ok(solve_on(full, mode));
    }
    let mut basis = Vec::new();
    let mut summand_dims = Vec::new();
    for k in 0..rd.components().len() {
        let sub = rd.component_nilpotent(k)?;
        let part = solve_on(&sub, mode);
        summand_dims.push(part.dim());
        basis.extend(part.basis().iter().map(|d| embed_blocks(&sub, full, d)));
    }
    Ok(DerivationSpace::new(
        full.dim(),
        mode,
        basis,
        mode_blocks(full, mode),
        summand_dims,
    ))
}

/// The summand-by-summand root-space derivations agree with a direct solve on all of `n`.
pub fn summand_reduction_check(rd: &RootDatum) -> Result<CheckReport> {
    let direct = solve_on(rd.nilpotent(), ConstraintMode::RootSpace);
    let assembled = solve_derivations(rd, ConstraintMode::RootSpace)?;
    let same =
        direct.dim() == assembled.dim() && assembled.basis().iter().all(|d| direct.contains(d));
    Ok(CheckReport {
        name: "derivations split along simple summands".into(),
        passed: same,
        cases: assembled.dim(),
        witness: (!same)
            .then(|| format!("direct {} vs per-summand {}", direct.dim(), assembled.dim())),
    })
}
