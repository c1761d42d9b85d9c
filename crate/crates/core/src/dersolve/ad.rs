use num_traits::Zero;

use super::{mode_blocks, respects_blocks, solve_derivations, ConstraintMode, DerivationSpace};
use crate::linalg::{combine, solve, MatrixQ, SubspaceBasis, VecQ};
use crate::roots::RootDatum;
use crate::{Error, Result};

/// `ad(W)|_n` for `W` running over the basis of `m` followed by the basis of `a`.
#[derive(Clone, Debug)]
pub struct AdImage {
    pub generators: Vec<MatrixQ>,
    pub m_dim: usize,
    pub kernel_dim: usize,
}

impl AdImage {
    pub fn dim(&self) -> usize {
        self.generators.len() - self.kernel_dim
    }

    pub fn span(&self) -> SubspaceBasis {
        let n = self.generators.first().map_or(0, MatrixQ::rows);
        SubspaceBasis::span(n * n, self.generators.iter().map(MatrixQ::flatten))
    }
}

/// Matrices of `ad(W)|_n`, each checked to be a root-space-preserving derivation.
pub fn ad_restriction(rd: &RootDatum) -> Result<AdImage> {
    let nil = rd.nilpotent();
    let g = rd.algebra();
    let blocks = mode_blocks(nil, ConstraintMode::RootSpace);
    let mut generators = Vec::new();
    for w in rd.m_plus_a() {
        let cols: Vec<VecQ> = nil
            .embedding()
            .vectors()
            .iter()
            .map(|e| {
                nil.coords(&g.bracket_coords(&w, e))
                    .ok_or_else(|| Error::RootData("ad(W) does not preserve n".into()))
            })
            .collect::<Result<_>>()?;
        let m = MatrixQ::from_columns(&cols, nil.dim());
        if !respects_blocks(&m, &blocks) || !nil.structure().is_derivation(&m) {
            return Err(Error::RootData(
                "ad(W) is not a root-space-preserving derivation".into(),
            ));
        }
        generators.push(m);
    }
    let n = nil.dim();
    let flat: Vec<VecQ> = generators.iter().map(MatrixQ::flatten).collect();
    let rank = MatrixQ::from_columns(&flat, n * n).rank();
    Ok(AdImage {
        kernel_dim: generators.len() - rank,
        m_dim: rd.m_basis().dim(),
        generators,
    })
}

/// Result of solving `ad(W)|_n = d` for `W` in `m + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Found {
        /// Coefficients over the basis of `m` followed by the basis of `a`.
        coefficients: VecQ,
        element: VecQ,
        m_part: VecQ,
        a_part: VecQ,
    },
    /// `d - ad(W*)|_n` for the least-squares solution `W*`, computed exactly.
    NoSolution { residual: MatrixQ },
}

impl Reconstruction {
    pub fn is_found(&self) -> bool {
        matches!(self, Self::Found { .. })
    }

    /// Whether a solution exists and lies in `m`.
    pub fn in_m(&self) -> bool {
        match self {
            Self::Found { a_part, .. } => a_part.iter().all(Zero::is_zero),
            Self::NoSolution { .. } => false,
        }
    }
}

pub fn reconstruct_w(rd: &RootDatum, d: &MatrixQ) -> Result<Reconstruction> {
    let ad = ad_restriction(rd)?;
    Ok(reconstruct_w_with(rd, &ad, d))
}

pub fn reconstruct_w_with(rd: &RootDatum, ad: &AdImage, d: &MatrixQ) -> Reconstruction {
    let n = rd.nilpotent().dim();
    let flat: Vec<VecQ> = ad.generators.iter().map(MatrixQ::flatten).collect();
    let a = MatrixQ::from_columns(&flat, n * n);
    let b = d.flatten();
    if let Some(x) = solve(&a, &b) {
        let basis = rd.m_plus_a();
        let dim = rd.algebra().dim();
        let element = combine(&x, &basis, dim);
        let m_part = combine(&x[..ad.m_dim], &basis[..ad.m_dim], dim);
        let a_part = combine(&x[ad.m_dim..], &basis[ad.m_dim..], dim);
        return Reconstruction::Found {
            coefficients: x,
            element,
            m_part,
            a_part,
        };
    }
    let at = a.transpose();
    let normal = &at * &a;
    let x = solve(&normal, &at.mul_vec(&b)).expect("normal equations are consistent");
    let fitted = MatrixQ::from_flat(n, n, a.mul_vec(&x));
    Reconstruction::NoSolution {
        residual: d - &fitted,
    }
}

/// Bases of the symmetric and skew-symmetric parts of a derivation space,
/// after checking that it is closed under transpose.
pub fn split_sym_skew(
    rd: &RootDatum,
    ds: &DerivationSpace,
) -> Result<(Vec<MatrixQ>, Vec<MatrixQ>)> {
    let nil = rd.nilpotent();
    let n = ds.n_dim();
    if nil.dim() != n {
        return Err(Error::Shape("derivation space does not live on n".into()));
    }
    let half = crate::linalg::qf(1, 2);
    let (mut sym, mut skew) = (Vec::new(), Vec::new());
    for (k, d) in ds.basis().iter().enumerate() {
        let dt = nil.transpose(d);
        if !ds.contains(&dt) {
            return Err(Error::TransposeNotDerivation(format!("basis element {k}")));
        }
        sym.push((d + &dt).scale(&half).flatten());
        skew.push((d - &dt).scale(&half).flatten());
    }
    let reshape = |s: SubspaceBasis| -> Vec<MatrixQ> {
        s.into_vectors()
            .into_iter()
            .map(|v| MatrixQ::from_flat(n, n, v))
            .collect()
    };
    let sym = reshape(SubspaceBasis::span(n * n, sym));
    let skew = reshape(SubspaceBasis::span(n * n, skew));
    if sym.len() + skew.len() != ds.dim() {
        return Err(Error::TransposeNotDerivation(
            "symmetric and skew parts do not fill the space".into(),
        ));
    }
    Ok((sym, skew))
}

/// Root-space-preserving derivations of `n` against `ad(m + a)`.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub dim_der: usize,
    pub dim_ad: usize,
    pub dim_sym: usize,
    pub dim_skew: usize,
    /// Every `ad(W)|_n` lies in the solved space.
    pub containment: bool,
    pub equal: bool,
    pub exceptional_expected: bool,
    /// First solved basis derivation outside `ad(m + a)`.
    pub witness: Option<MatrixQ>,
}

impl Verdict {
    /// `equal` is what the classification predicts for this algebra.
    pub fn matches_expectation(&self) -> bool {
        self.equal != self.exceptional_expected
    }
}

pub fn main_theorem_verdict(rd: &RootDatum) -> Result<Verdict> {
    let der = solve_derivations(rd, ConstraintMode::RootSpace)?;
    let ad = ad_restriction(rd)?;
    let (sym, skew) = split_sym_skew(rd, &der)?;
    let containment = ad.generators.iter().all(|g| der.contains(g));
    let span = ad.span();
    let witness = der
        .basis()
        .iter()
        .find(|d| !span.contains(&d.flatten()))
        .cloned();
    let dim_ad = ad.dim();
    Ok(Verdict {
        dim_der: der.dim(),
        dim_ad,
        dim_sym: sym.len(),
        dim_skew: skew.len(),
        containment,
        equal: containment && der.dim() == dim_ad,
        exceptional_expected: rd.base().exceptional_expected(),
        witness,
    })
}
