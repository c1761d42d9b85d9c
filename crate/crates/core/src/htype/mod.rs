//! Metric two-step nilpotent algebras `v + z` and H-type machinery.
//!
//! Basis convention: coordinates `0..v_dim` are `v`, the rest are `z`.

mod derivations;
mod json;

pub use derivations::{
    anticommutes_with_all_j, commutes_with_all_j, j_intertwining_holds, riehm_phi, spin_basis,
    split_derivation, symmetric_spectrum_check, DerivationSplit, SpectrumReport,
};
pub use json::MetricTwoStepJson;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lie::StructureConstants;
use crate::linalg::{
    dot, fmt_rational, q, unit_vec, zero_vec, CoordinateMap, MatrixQ, Rational, SubspaceBasis, VecQ,
};
use crate::roots::RootDatum;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricTwoStep {
    v_dim: usize,
    z_dim: usize,
    structure: StructureConstants,
    gram_v: MatrixQ,
    gram_z: MatrixQ,
    gram_v_inv: MatrixQ,
    gram_z_inv: MatrixQ,
}

/// `J_Z` for a fixed `Z`, as a matrix on `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JOperator {
    pub z: VecQ,
    pub matrix: MatrixQ,
}

/// An endomorphism preserving `v` and `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEndo {
    pub v: MatrixQ,
    pub z: MatrixQ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTypeReport {
    pub is_htype: bool,
    /// The constant `c` in `J_Z^2 = -c |Z|^2 I`.
    pub constant: String,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn check_gram(g: &MatrixQ, n: usize, what: &str) -> Result<()> {
    if g.rows() != n || g.cols() != n {
        return Err(Error::Shape(format!("{what} Gram matrix must be {n}x{n}")));
    }
    if !g.is_symmetric() || !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(format!("{what} Gram matrix")));
    }
    Ok(())
}

impl MetricTwoStep {
    /// `triples` lists `[v_i, v_j] = ... + c z_k ...` as `(i, j, k, c)` with `i < j`.
    pub fn new(
        v_dim: usize,
        z_dim: usize,
        triples: &[(usize, usize, usize, Rational)],
        gram_v: MatrixQ,
        gram_z: MatrixQ,
    ) -> Result<Self> {
        let mut brackets: Vec<VecQ> = vec![zero_vec(z_dim); v_dim * v_dim];
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, c) in triples {
            let (i, j, k) = (*i, *j, *k);
            if i >= v_dim || j >= v_dim || k >= z_dim {
                return Err(Error::Shape(format!(
                    "bracket index ({i}, {j}, {k}) out of range"
                )));
            }
            if i >= j {
                return Err(Error::NotAntisymmetric(i, j));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Parse(format!(
                    "bracket ({i}, {j}) -> z_{k} given twice"
                )));
            }
            brackets[i * v_dim + j][k] = c.clone();
        }
        Self::from_brackets(
            v_dim,
            z_dim,
            |i, j| brackets[i * v_dim + j].clone(),
            gram_v,
            gram_z,
        )
    }

    /// `f(i, j)` gives the `z` coordinates of `[v_i, v_j]` for `i < j`.
    pub fn from_brackets(
        v_dim: usize,
        z_dim: usize,
        mut f: impl FnMut(usize, usize) -> VecQ,
        gram_v: MatrixQ,
        gram_z: MatrixQ,
    ) -> Result<Self> {
        check_gram(&gram_v, v_dim, "v")?;
        check_gram(&gram_z, z_dim, "z")?;
        let dim = v_dim + z_dim;
        let mut structure = StructureConstants::zero(dim);
        for i in 0..v_dim {
            for j in i + 1..v_dim {
                let c = f(i, j);
                if c.len() != z_dim {
                    return Err(Error::Shape(format!(
                        "bracket ({i}, {j}) has {} z coordinates",
                        c.len()
                    )));
                }
                let terms = c
                    .into_iter()
                    .enumerate()
                    .map(|(k, x)| (v_dim + k, x))
                    .collect();
                structure.set_bracket(i, j, terms);
            }
        }
        let gram_v_inv = gram_v.inverse().expect("positive definite");
        let gram_z_inv = gram_z.inverse().expect("positive definite");
        Ok(Self {
            v_dim,
            z_dim,
            structure,
            gram_v,
            gram_z,
            gram_v_inv,
            gram_z_inv,
        })
    }

    /// The Heisenberg algebra `h_n`: `[e_i, e_(n+i)] = Z`, orthonormal.
    pub fn heisenberg(n: usize) -> Self {
        Self::from_brackets(
            2 * n,
            1,
            |i, j| vec![if j == i + n { q(1) } else { q(0) }],
            MatrixQ::identity(2 * n),
            MatrixQ::identity(1),
        )
        .expect("valid by construction")
    }

    /// Orthonormal algebra whose `J` operators are the given skew matrices:
    /// `<Z_k, [X, Y]> = <J_k X, Y>`.
    pub fn from_j_matrices(js: &[MatrixQ]) -> Result<Self> {
        let v_dim = js.first().map_or(0, MatrixQ::rows);
        for j in js {
            if j.rows() != v_dim || j.cols() != v_dim || &j.transpose() != &-j {
                return Err(Error::Shape(
                    "J matrices must be square, skew and of equal size".into(),
                ));
            }
        }
        Self::from_brackets(
            v_dim,
            js.len(),
            |a, b| js.iter().map(|j| j[(b, a)].clone()).collect(),
            MatrixQ::identity(v_dim),
            MatrixQ::identity(js.len()),
        )
    }

    /// Quaternionic Heisenberg algebra on `H^n`, with centre `Im H`.
    pub fn quaternionic_heisenberg(n: usize) -> Self {
        // left multiplication by i, j, k on the basis (1, i, j, k)
        let units = [
            MatrixQ::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
            MatrixQ::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]),
            MatrixQ::from_i64(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]),
        ];
        let js: Vec<MatrixQ> = units
            .iter()
            .map(|u| {
                let mut m = MatrixQ::zeros(4 * n, 4 * n);
                for b in 0..n {
                    m.set_block(4 * b, 4 * b, u);
                }
                m
            })
            .collect();
        Self::from_j_matrices(&js).expect("valid by construction")
    }

    /// Free two-step nilpotent algebra on `r` generators, orthonormal.
    pub fn free_two_step(r: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .collect();
        let z_dim = pairs.len();
        Self::from_brackets(
            r,
            z_dim,
            |i, j| {
                let k = pairs.iter().position(|&p| p == (i, j)).unwrap();
                unit_vec(z_dim, k)
            },
            MatrixQ::identity(r),
            MatrixQ::identity(z_dim),
        )
        .expect("valid by construction")
    }

    /// `v` is the sum of the root spaces in `v_roots`, `z` of those in
    /// `z_roots` (indices of positive roots). With `project`, brackets are
    /// replaced by their orthogonal projection to `z`; otherwise the span
    /// must already be a two-step algebra with centre containing `z`.
    pub fn from_root_spaces(
        rd: &RootDatum,
        v_roots: &[usize],
        z_roots: &[usize],
        project: bool,
    ) -> Result<Self> {
        let g = rd.algebra();
        let dim = g.dim();
        let gather = |idx: &[usize]| -> Vec<VecQ> {
            idx.iter()
                .flat_map(|&i| rd.positive_space(i).vectors().iter().cloned())
                .collect()
        };
        let (vs, zs) = (gather(v_roots), gather(z_roots));
        let vb = SubspaceBasis::span(dim, vs.clone());
        let zb = SubspaceBasis::span(dim, zs.clone());
        if vb.dim() != vs.len() || zb.dim() != zs.len() || vb.sum(&zb)?.dim() != vs.len() + zs.len()
        {
            return Err(Error::Shape("root spaces overlap".into()));
        }
        let gram_v = rd.inner().restrict(&vb);
        let gram_z = rd.inner().restrict(&zb);
        let zmap = CoordinateMap::new(&zb);
        let gram_z_inv = gram_z.inverse().expect("positive definite");
        let ip = rd.inner().gram();
        let mut failure = None;
        if !project {
            'outer: for x in vs.iter().chain(&zs) {
                for z in &zs {
                    if !crate::linalg::is_zero_vec(&g.bracket_coords(x, z)) {
                        failure = Some("z is not central".to_string());
                        break 'outer;
                    }
                }
            }
        }
        let out = Self::from_brackets(
            vs.len(),
            zs.len(),
            |i, j| {
                let b = g.bracket_coords(&vs[i], &vs[j]);
                if project {
                    let rhs: VecQ = zs.iter().map(|z| dot(z, &ip.mul_vec(&b))).collect();
                    gram_z_inv.mul_vec(&rhs)
                } else {
                    zmap.coords(&b).unwrap_or_else(|| {
                        failure.get_or_insert_with(|| format!("[v_{i}, v_{j}] is not in z"));
                        zero_vec(zs.len())
                    })
                }
            },
            gram_v,
            gram_z,
        )?;
        match failure {
            Some(msg) => Err(Error::NotClosed(msg)),
            None => Ok(out),
        }
    }

    /// `v + g_omega`, with `v` the sum of the root spaces with `<gamma, omega> = 1`.
    pub fn ciatti(rd: &RootDatum) -> Result<Self> {
        let s = rd.highest_split()?;
        Self::from_root_spaces(rd, &s.sigma1, &[s.omega], false)
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn z_dim(&self) -> usize {
        self.z_dim
    }

    pub fn dim(&self) -> usize {
        self.v_dim + self.z_dim
    }

    /// Bracket on the whole of `v + z`.
    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn gram_v(&self) -> &MatrixQ {
        &self.gram_v
    }

    pub fn gram_z(&self) -> &MatrixQ {
        &self.gram_z
    }

    /// `z` coordinates of `[v_i, v_j]`.
    pub fn bracket_tensor(&self, i: usize, j: usize) -> VecQ {
        let full = self.structure.basis_bracket_vec(i, j);
        full[self.v_dim..].to_vec()
    }

    /// Bracket of two `v` vectors, in `z` coordinates.
    pub fn bracket_v(&self, x: &[Rational], y: &[Rational]) -> VecQ {
        let mut xx = x.to_vec();
        xx.resize(self.dim(), Rational::zero());
        let mut yy = y.to_vec();
        yy.resize(self.dim(), Rational::zero());
        self.structure.bracket(&xx, &yy)[self.v_dim..].to_vec()
    }

    pub fn inner_z(&self, a: &[Rational], b: &[Rational]) -> Rational {
        dot(a, &self.gram_z.mul_vec(b))
    }

    pub fn inner_v(&self, a: &[Rational], b: &[Rational]) -> Rational {
        dot(a, &self.gram_v.mul_vec(b))
    }

    pub fn z_basis(&self) -> Vec<VecQ> {
        (0..self.z_dim).map(|k| unit_vec(self.z_dim, k)).collect()
    }

    /// An orthogonal basis of `z`.
    pub fn orthogonal_z_basis(&self) -> Vec<VecQ> {
        crate::linalg::gram_schmidt(&self.z_basis(), &self.gram_z)
    }

    pub fn to_json(&self) -> Result<MetricTwoStepJson> {
        MetricTwoStepJson::from_algebra(self)
    }

    /// Transpose of a `v` endomorphism with respect to `gram_v`.
    pub fn transpose_v(&self, a: &MatrixQ) -> MatrixQ {
        &(&self.gram_v_inv * &a.transpose()) * &self.gram_v
    }

    pub fn transpose_z(&self, a: &MatrixQ) -> MatrixQ {
        &(&self.gram_z_inv * &a.transpose()) * &self.gram_z
    }
}

/// `J_Z`, from `<J_Z X, Y> = <Z, [X, Y]>`.
pub fn jz(m: &MetricTwoStep, z: &[Rational]) -> JOperator {
    assert_eq!(z.len(), m.z_dim, "z vector length");
    let gz = m.gram_z.mul_vec(z);
    let n = m.v_dim;
    // mt[(b, a)] = <Z, [X_a, X_b]>, which is (G_v J)_(b, a)
    let mut mt = MatrixQ::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let c = dot(&gz, &m.bracket_tensor(a, b));
            mt[(a, b)] = -c.clone();
            mt[(b, a)] = c;
        }
    }
    JOperator {
        z: z.to_vec(),
        matrix: &m.gram_v_inv * &mt,
    }
}

/// `J_Z^2 = -c |Z|^2 I` on a basis of `z`, and the polarized form
/// `J_Z J_Z' + J_Z' J_Z = -2c <Z, Z'> I` on basis pairs.
pub fn kaplan_check_scaled(m: &MetricTwoStep, c: &Rational) -> HTypeReport {
    let mut rep = HTypeReport {
        is_htype: true,
        constant: fmt_rational(c),
        cases: 0,
        witness: None,
    };
    let id = MatrixQ::identity(m.v_dim);
    let js: Vec<MatrixQ> = m.z_basis().iter().map(|z| jz(m, z).matrix).collect();
    for i in 0..m.z_dim {
        for j in i..m.z_dim {
            rep.cases += 1;
            let lhs = if i == j {
                &js[i] * &js[i]
            } else {
                &(&js[i] * &js[j]) + &(&js[j] * &js[i])
            };
            let factor = if i == j { Rational::one() } else { q(2) };
            let rhs = id.scale(&-(c * &factor * &m.gram_z[(i, j)]));
            if lhs != rhs && rep.is_htype {
                rep.is_htype = false;
                let defect = (&lhs - &rhs).rank();
                rep.witness = Some(if i == j {
                    format!("J^2 + c|Z|^2 I has rank {defect} for Z = z_{i}")
                } else {
                    format!("Clifford relation fails for (z_{i}, z_{j}), defect rank {defect}")
                });
            }
        }
    }
    rep
}

pub fn kaplan_check(m: &MetricTwoStep) -> HTypeReport {
    kaplan_check_scaled(m, &Rational::one())
}

pub fn is_htype(m: &MetricTwoStep) -> bool {
    kaplan_check(m).is_htype
}

pub(crate) fn require_htype(m: &MetricTwoStep) -> Result<()> {
    let rep = kaplan_check(m);
    if rep.is_htype {
        Ok(())
    } else {
        Err(Error::NotHType(rep.witness.unwrap_or_default()))
    }
}

impl GradedEndo {
    pub fn zero(m: &MetricTwoStep) -> Self {
        Self {
            v: MatrixQ::zeros(m.v_dim, m.v_dim),
            z: MatrixQ::zeros(m.z_dim, m.z_dim),
        }
    }

    /// `1` on `v`, `2` on `z`.
    pub fn grading(m: &MetricTwoStep) -> Self {
        Self {
            v: MatrixQ::identity(m.v_dim),
            z: MatrixQ::identity(m.z_dim).scale(&q(2)),
        }
    }

    /// Splits a block-diagonal matrix on `v + z`.
    pub fn from_matrix(m: &MetricTwoStep, d: &MatrixQ) -> Result<Self> {
        let n = m.dim();
        if d.rows() != n || d.cols() != n {
            return Err(Error::Shape(format!("endomorphism must be {n}x{n}")));
        }
        let vr: Vec<usize> = (0..m.v_dim).collect();
        let zr: Vec<usize> = (m.v_dim..n).collect();
        if !d.select(&vr, &zr).is_zero() || !d.select(&zr, &vr).is_zero() {
            return Err(Error::Shape(
                "endomorphism does not preserve v and z".into(),
            ));
        }
        Ok(Self {
            v: d.select(&vr, &vr),
            z: d.select(&zr, &zr),
        })
    }

    pub fn to_matrix(&self) -> MatrixQ {
        let (a, b) = (self.v.rows(), self.z.rows());
        let mut out = MatrixQ::zeros(a + b, a + b);
        out.set_block(0, 0, &self.v);
        out.set_block(a, a, &self.z);
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            v: &self.v + &o.v,
            z: &self.z + &o.z,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            v: &self.v - &o.v,
            z: &self.z - &o.z,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            v: self.v.scale(s),
            z: self.z.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.z.is_zero()
    }

    pub fn transpose(&self, m: &MetricTwoStep) -> Self {
        Self {
            v: m.transpose_v(&self.v),
            z: m.transpose_z(&self.z),
        }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        Self {
            v: self.v.commutator(&o.v),
            z: self.z.commutator(&o.z),
        }
    }

    pub fn is_derivation(&self, m: &MetricTwoStep) -> bool {
        m.structure.is_derivation(&self.to_matrix())
    }
}
