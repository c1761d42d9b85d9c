use num_traits::Zero;

use super::{jz, require_htype, GradedEndo, MetricTwoStep};
use crate::linalg::{fmt_rational, q, solve, EigenSplit, MatrixQ, Rational, SubspaceBasis, VecQ};
use crate::{Error, Result};

/// `J_(D^T Z) = D^T J_Z + J_Z D` for every basis vector `Z` of `z`.
/// For grading-preserving `D` this is equivalent to `D` being a derivation.
pub fn j_intertwining_holds(m: &MetricTwoStep, d: &GradedEndo) -> bool {
    let dt = d.transpose(m);
    m.z_basis().iter().all(|z| {
        let lhs = jz(m, &dt.z.mul_vec(z)).matrix;
        let j = jz(m, z).matrix;
        lhs == &(&dt.v * &j) + &(&j * &d.v)
    })
}

pub fn commutes_with_all_j(m: &MetricTwoStep, dv: &MatrixQ) -> bool {
    m.z_basis()
        .iter()
        .all(|z| dv.commutator(&jz(m, z).matrix).is_zero())
}

pub fn anticommutes_with_all_j(m: &MetricTwoStep, dv: &MatrixQ) -> bool {
    m.z_basis().iter().all(|z| {
        let j = jz(m, z).matrix;
        (&(dv * &j) + &(&j * dv)).is_zero()
    })
}

/// `Phi(X + Z) = J_z1 J_z2 X + 2 <z1, Z> z2 - 2 <z2, Z> z1`.
pub fn riehm_phi(m: &MetricTwoStep, z1: &[Rational], z2: &[Rational]) -> Result<GradedEndo> {
    if !m.inner_z(z1, z2).is_zero() {
        return Err(Error::NotOrthogonal);
    }
    require_htype(m)?;
    let v = &jz(m, z1).matrix * &jz(m, z2).matrix;
    let g1 = m.gram_z().mul_vec(z1);
    let g2 = m.gram_z().mul_vec(z2);
    let n = m.z_dim();
    let mut z = MatrixQ::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            z[(r, c)] = q(2) * (&z2[r] * &g1[c] - &z1[r] * &g2[c]);
        }
    }
    let phi = GradedEndo { v, z };
    if phi.transpose(m) != phi.scale(&q(-1)) {
        return Err(Error::NotADerivation(
            "Riehm generator is not skew-symmetric".into(),
        ));
    }
    if !phi.is_derivation(m) {
        return Err(Error::NotADerivation("Riehm generator".into()));
    }
    Ok(phi)
}

/// `Phi_ij` for `i < j` over an orthogonal basis of `z`.
pub fn spin_basis(m: &MetricTwoStep) -> Result<Vec<GradedEndo>> {
    require_htype(m)?;
    let zs = m.orthogonal_z_basis();
    let mut out = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            out.push(riehm_phi(m, &zs[i], &zs[j])?);
        }
    }
    Ok(out)
}

/// `sym + skew = d` and `skew = spin + zero_centre_skew`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSplit {
    pub sym: GradedEndo,
    pub skew: GradedEndo,
    pub spin: GradedEndo,
    pub zero_centre_skew: GradedEndo,
}

pub fn split_derivation(m: &MetricTwoStep, d: &GradedEndo) -> Result<DerivationSplit> {
    if !d.is_derivation(m) {
        return Err(Error::NotADerivation("input to split".into()));
    }
    require_htype(m)?;
    let dt = d.transpose(m);
    let half = Rational::new(1.into(), 2.into());
    let sym = d.add(&dt).scale(&half);
    let skew = d.sub(&dt).scale(&half);
    for (part, name) in [(&sym, "symmetric"), (&skew, "skew")] {
        if !part.is_derivation(m) {
            return Err(Error::TransposeNotDerivation(format!("{name} part")));
        }
    }
    let phis = spin_basis(m)?;
    let spin = if phis.is_empty() {
        GradedEndo::zero(m)
    } else {
        let cols: Vec<VecQ> = phis.iter().map(|p| p.z.flatten()).collect();
        let a = MatrixQ::from_columns(&cols, m.z_dim() * m.z_dim());
        let c = solve(&a, &skew.z.flatten()).ok_or_else(|| {
            Error::NotHType("skew part on z is not in the span of the Riehm generators".into())
        })?;
        phis.iter()
            .zip(&c)
            .fold(GradedEndo::zero(m), |acc, (p, x)| acc.add(&p.scale(x)))
    };
    let zero_centre_skew = skew.sub(&spin);
    if !zero_centre_skew.z.is_zero() || !commutes_with_all_j(m, &zero_centre_skew.v) {
        return Err(Error::NotHType(
            "skew part minus spin part does not commute with J".into(),
        ));
    }
    Ok(DerivationSplit {
        sym,
        skew,
        spin,
        zero_centre_skew,
    })
}

/// Outcome of the eigenvalue analysis of a symmetric derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Half the eigenvalue on `z`.
    pub mu: Rational,
    pub z_scalar: bool,
    /// Distinct eigenvalues on `v`, decreasing, with multiplicities.
    pub eigenvalues: Vec<(Rational, usize)>,
    pub pairing: bool,
    pub projections_are_derivations: bool,
    pub grading_is_derivation: bool,
    pub reconstructs: bool,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.z_scalar
            && self.pairing
            && self.projections_are_derivations
            && self.grading_is_derivation
            && self.reconstructs
    }

    pub fn describe(&self) -> String {
        let ev: Vec<String> = self
            .eigenvalues
            .iter()
            .map(|(l, k)| format!("{} (x{k})", fmt_rational(l)))
            .collect();
        format!(
            "mu = {}, eigenvalues on v: {}",
            fmt_rational(&self.mu),
            ev.join(", ")
        )
    }
}

/// Projection onto `spaces[i]` along the others, as a matrix.
fn projections(spaces: &[SubspaceBasis], n: usize) -> Vec<MatrixQ> {
    let all: Vec<VecQ> = spaces
        .iter()
        .flat_map(|s| s.vectors().iter().cloned())
        .collect();
    let p = MatrixQ::from_columns(&all, n);
    let p_inv = p.inverse().expect("eigenspaces span");
    let mut out = Vec::new();
    let mut start = 0;
    for s in spaces {
        let mut sel = MatrixQ::zeros(n, n);
        for k in start..start + s.dim() {
            sel[(k, k)] = Rational::from_integer(1.into());
        }
        start += s.dim();
        out.push(&(&p * &sel) * &p_inv);
    }
    out
}

pub fn symmetric_spectrum_check(m: &MetricTwoStep, d: &GradedEndo) -> Result<SpectrumReport> {
    if !d.is_derivation(m) {
        return Err(Error::NotADerivation("input to spectrum check".into()));
    }
    if d.transpose(m) != *d {
        return Err(Error::NotSymmetric("derivation is not symmetric".into()));
    }
    let (nv, nz) = (m.v_dim(), m.z_dim());
    let two = q(2);
    let mu = if nz == 0 {
        Rational::zero()
    } else {
        &d.z[(0, 0)] / &two
    };
    let z_scalar = d.z == MatrixQ::identity(nz).scale(&(&two * &mu));

    let split = EigenSplit::compute(&d.v)?.require_full()?;
    let mut order: Vec<usize> = (0..split.eigenvalues.len()).collect();
    order.reverse();
    let eigenvalues: Vec<(Rational, usize)> = order
        .iter()
        .map(|&i| (split.eigenvalues[i].clone(), split.spaces[i].dim()))
        .collect();
    let spaces: Vec<SubspaceBasis> = order.iter().map(|&i| split.spaces[i].clone()).collect();
    let r = eigenvalues.len();
    let pairing = (0..r).all(|i| {
        let (a, ka) = &eigenvalues[i];
        let (b, kb) = &eigenvalues[r - 1 - i];
        a + b == &two * &mu && ka == kb
    });

    let projs = projections(&spaces, nv);
    let zero_z = MatrixQ::zeros(nz, nz);
    let mut projections_are_derivations = true;
    let mut rebuilt = GradedEndo::grading(m).scale(&mu);
    for i in 0..r / 2 {
        let e = GradedEndo {
            v: &projs[i] - &projs[r - 1 - i],
            z: zero_z.clone(),
        };
        projections_are_derivations &= e.is_derivation(m);
        rebuilt = rebuilt.add(&e.scale(&(&eigenvalues[i].0 - &mu)));
    }
    Ok(SpectrumReport {
        grading_is_derivation: GradedEndo::grading(m).is_derivation(m),
        reconstructs: rebuilt == *d,
        mu,
        z_scalar,
        eigenvalues,
        pairing,
        projections_are_derivations,
    })
}
