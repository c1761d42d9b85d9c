//! Exact checks of the structural identities of a root datum. Each check
//! returns a [`CheckReport`] instead of failing, so a whole suite can run and
//! report every violation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{fmt_covector, RootDatum};
use crate::linalg::{
    combine, gram_schmidt, is_zero_vec, q, scale_vec, CoordinateMap, MatrixQ, SubspaceBasis, VecQ,
};
use crate::{Error, Result};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Controls the randomized part of the checks: random elements are integer
/// combinations of basis vectors with coefficients in `-3..=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual identities verified.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            cases: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

pub(crate) struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub(crate) fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A nonzero random element of `space`.
    pub(crate) fn element(&mut self, space: &SubspaceBasis) -> VecQ {
        assert!(!space.is_zero(), "cannot sample from the zero space");
        loop {
            let coeffs: VecQ = (0..space.dim())
                .map(|_| q(self.rng.gen_range(-3..=3)))
                .collect();
            let v = combine(&coeffs, space.vectors(), space.ambient_dim());
            if !is_zero_vec(&v) {
                return v;
            }
        }
    }

    /// Basis vectors followed by `samples` random elements.
    pub(crate) fn elements(&mut self, space: &SubspaceBasis, samples: usize) -> Vec<VecQ> {
        let mut out = space.vectors().to_vec();
        for _ in 0..samples {
            out.push(self.element(space));
        }
        out
    }
}

/// `[theta X, X] = |X|^2 H_gamma` on every root space, and `[H_gamma, Y] = <delta, gamma> Y`
/// for `Y` in `g_delta`.
pub fn coroot_identity_check(rd: &RootDatum, cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("coroot identity");
    let g = rd.algebra();
    let mut sampler = Sampler::new(cfg.seed);
    for gamma in rd.roots() {
        let space = rd.root_space(&gamma).expect("listed root").clone();
        let h = rd.coroot_unchecked(&gamma);
        for x in sampler.elements(&space, cfg.samples) {
            let lhs = g.bracket_coords(&g.theta_coords(&x), &x);
            let rhs = scale_vec(&rd.inner().norm_sq(&x), &h);
            rep.record(lhs == rhs, || {
                format!(
                    "[theta X, X] != |X|^2 H_gamma for gamma = {}",
                    fmt_covector(&gamma)
                )
            });
        }
        for delta in rd.roots() {
            let ip = rd.root_inner(&delta, &gamma);
            for y in rd.root_space(&delta).expect("listed root").vectors() {
                let ok = g.bracket_coords(&h, y) == scale_vec(&ip, y);
                rep.record(ok, || {
                    format!(
                        "delta(H_gamma) != <delta, gamma> for gamma = {}, delta = {}",
                        fmt_covector(&gamma),
                        fmt_covector(&delta)
                    )
                });
            }
        }
    }
    rep
}

/// `[g_gamma, g_delta]` lies in `g_(gamma+delta)`, in `g_0` when the sum is zero,
/// and vanishes when the sum is not a root.
pub fn bracket_compatibility_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("bracket compatibility");
    let g = rd.algebra();
    let roots = rd.roots();
    let zero = SubspaceBasis::zero(g.dim());
    for gamma in &roots {
        for delta in &roots {
            let sum: VecQ = gamma.iter().zip(delta).map(|(a, b)| a + b).collect();
            let target = if is_zero_vec(&sum) {
                rd.zero_space()
            } else {
                rd.root_space(&sum).unwrap_or(&zero)
            };
            for x in rd.root_space(gamma).expect("listed root").vectors() {
                for y in rd.root_space(delta).expect("listed root").vectors() {
                    let ok = target.contains(&g.bracket_coords(x, y));
                    rep.record(ok, || {
                        format!(
                            "[g_{}, g_{}] escapes its root space",
                            fmt_covector(gamma),
                            fmt_covector(delta)
                        )
                    });
                }
            }
        }
    }
    rep
}

/// `m`, `a` and the root spaces are mutually orthogonal.
pub fn orthogonality_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("orthogonality of m, a and root spaces");
    let mut summands: Vec<(String, SubspaceBasis)> = vec![
        ("m".into(), rd.m_basis().clone()),
        ("a".into(), rd.a_basis().clone()),
    ];
    for gamma in rd.roots() {
        summands.push((
            fmt_covector(&gamma),
            rd.root_space(&gamma).expect("listed root").clone(),
        ));
    }
    let ip = rd.inner();
    for (i, (na, a)) in summands.iter().enumerate() {
        for (nb, b) in &summands[i + 1..] {
            for x in a.vectors() {
                for y in b.vectors() {
                    let ok = num_traits::Zero::is_zero(&ip.inner_coords(x, y));
                    rep.record(ok, || format!("{na} and {nb} are not orthogonal"));
                }
            }
        }
    }
    rep
}

/// Coordinates of `vs` in `space`, as the columns of a matrix.
fn coord_matrix(map: &CoordinateMap, vs: &[VecQ]) -> Option<MatrixQ> {
    let cols: Option<Vec<VecQ>> = vs.iter().map(|v| map.coords(v)).collect();
    Some(MatrixQ::from_columns(&cols?, map.dim()))
}

/// For positive `gamma`, `delta` with `gamma + delta` positive: the brackets
/// span `g_(gamma+delta)` and no nonzero `U` in `g_gamma` kills `g_delta`.
pub fn root_space_commutators_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("root space commutators");
    let g = rd.algebra();
    let n = rd.positive().len();
    for i in 0..n {
        for j in 0..n {
            let Some(k) = rd.sum_index(i, j) else {
                continue;
            };
            let (gi, gj, gk) = (
                rd.positive_space(i),
                rd.positive_space(j),
                rd.positive_space(k),
            );
            let brackets: Vec<VecQ> = gi
                .vectors()
                .iter()
                .flat_map(|x| gj.vectors().iter().map(move |y| g.bracket_coords(x, y)))
                .collect();
            let spanned = SubspaceBasis::span(g.dim(), brackets);
            rep.record(spanned.same_space(gk), || {
                format!("[g_{i}, g_{j}] does not span g_{k} (positive root indices)")
            });
            // U -> ([U, Y_b])_b stacked, one column per basis U
            let cols: Vec<VecQ> = gi
                .vectors()
                .iter()
                .map(|u| {
                    gj.vectors()
                        .iter()
                        .flat_map(|y| g.bracket_coords(u, y))
                        .collect()
                })
                .collect();
            let m = MatrixQ::from_columns(&cols, g.dim() * gj.dim());
            rep.record(m.rank() == gi.dim(), || {
                format!("a nonzero element of g_{i} centralizes g_{j} (positive root indices)")
            });
        }
    }
    rep
}

/// `ad(U)` is a bijection `g_gamma -> g_(gamma+delta)` for nonzero `U` in
/// `g_delta` when `gamma != delta`, `gamma - delta` and `gamma + 2 delta` are
/// not roots; likewise `ad(theta U)` back.
pub fn ux_check(rd: &RootDatum, cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("ad(U) bijective between root spaces");
    let g = rd.algebra();
    let n = rd.positive().len();
    let mut sampler = Sampler::new(cfg.seed);
    for i in 0..n {
        for j in 0..n {
            let Some(k) = rd.sum_index(i, j) else {
                continue;
            };
            if i == j || rd.difference_is_root(i, j) || rd.combination_index(1, i, 2, j).is_some() {
                continue;
            }
            let (gi, gj, gk) = (
                rd.positive_space(i),
                rd.positive_space(j),
                rd.positive_space(k),
            );
            rep.record(gi.dim() == gk.dim(), || format!("dim g_{i} != dim g_{k}"));
            let (mi, mk) = (CoordinateMap::new(gi), CoordinateMap::new(gk));
            for u in sampler.elements(gj, cfg.samples) {
                let fwd: Vec<VecQ> = gi
                    .vectors()
                    .iter()
                    .map(|x| g.bracket_coords(&u, x))
                    .collect();
                let ok = coord_matrix(&mk, &fwd)
                    .is_some_and(|m| m.rank() == gk.dim() && gi.dim() == gk.dim());
                rep.record(ok, || {
                    format!("ad(U) not bijective g_{i} -> g_{k} for U in g_{j}")
                });
                let tu = g.theta_coords(&u);
                let back: Vec<VecQ> = gk
                    .vectors()
                    .iter()
                    .map(|y| g.bracket_coords(&tu, y))
                    .collect();
                let ok = coord_matrix(&mi, &back).is_some_and(|m| m.rank() == gi.dim());
                rep.record(ok, || {
                    format!("ad(theta U) not onto g_{i} from g_{k} for U in g_{j}")
                });
            }
        }
    }
    rep
}

/// `[U, X] != 0` and `[[U, X], X] != 0` for nonzero `U` in `g_gamma`, `X` in
/// `g_delta`, when `gamma + delta` and `gamma + 2 delta` are roots but
/// `gamma - delta` and `gamma + 3 delta` are not.
pub fn uxx_check(rd: &RootDatum, cfg: &SampleConfig) -> CheckReport {
    let mut rep = CheckReport::new("[[U, X], X] nonzero");
    let g = rd.algebra();
    let n = rd.positive().len();
    let mut sampler = Sampler::new(cfg.seed);
    for i in 0..n {
        for j in 0..n {
            if rd.sum_index(i, j).is_none()
                || rd.combination_index(1, i, 2, j).is_none()
                || rd.difference_is_root(i, j)
                || rd.combination_index(1, i, 3, j).is_some()
            {
                continue;
            }
            let us = sampler.elements(rd.positive_space(i), cfg.samples);
            let xs = sampler.elements(rd.positive_space(j), cfg.samples);
            for u in &us {
                for x in &xs {
                    let ux = g.bracket_coords(u, x);
                    let uxx = g.bracket_coords(&ux, x);
                    rep.record(!is_zero_vec(&ux) && !is_zero_vec(&uxx), || {
                        format!("[[U, X], X] = 0 for U in g_{i}, X in g_{j}")
                    });
                }
            }
        }
    }
    rep
}

/// The only `W` in `g_0` with `ad(W)` zero on every simple root space is zero.
pub fn w_zero_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("W in g_0 killing simple root spaces is zero");
    let g = rd.algebra();
    let simple: Vec<VecQ> = rd
        .simple()
        .iter()
        .flat_map(|&i| rd.positive_space(i).vectors().iter().cloned())
        .collect();
    let cols: Vec<VecQ> = rd
        .zero_space()
        .vectors()
        .iter()
        .map(|w| simple.iter().flat_map(|x| g.bracket_coords(w, x)).collect())
        .collect();
    let m = MatrixQ::from_columns(&cols, g.dim() * simple.len());
    rep.record(m.rank() == rd.zero_space().dim(), || {
        format!(
            "joint kernel has dimension {}",
            rd.zero_space().dim() - m.rank()
        )
    });
    rep
}

/// `[g_h, g_1] = g_(h+1)` for every `h >= 1`, and no nonzero element of
/// `g_h` with `0 < h < height(omega)` centralizes `g_1`.
pub fn stratification_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("stratification");
    let g = rd.algebra();
    let top = rd.max_height();
    let g1 = rd.grading(1);
    for h in 1..=top {
        let gh = rd.grading(h);
        let brackets: Vec<VecQ> = gh
            .vectors()
            .iter()
            .flat_map(|x| g1.vectors().iter().map(move |y| g.bracket_coords(x, y)))
            .collect();
        let spanned = SubspaceBasis::span(g.dim(), brackets);
        rep.record(spanned.same_space(&rd.grading(h + 1)), || {
            format!("[g_{h}, g_1] != g_{}", h + 1)
        });
        if h < top {
            let cols: Vec<VecQ> = gh
                .vectors()
                .iter()
                .map(|x| {
                    g1.vectors()
                        .iter()
                        .flat_map(|y| g.bracket_coords(x, y))
                        .collect()
                })
                .collect();
            let m = MatrixQ::from_columns(&cols, g.dim() * g1.dim());
            rep.record(m.rank() == gh.dim(), || {
                format!("a nonzero element of g_{h} centralizes g_1")
            });
        }
    }
    rep
}

/// `m^gamma`: the span of `[X, theta Y]` over orthogonal pairs in `g_gamma`.
pub fn m_gamma(rd: &RootDatum, gamma: &[crate::linalg::Rational]) -> Result<SubspaceBasis> {
    let g = rd.algebra();
    let space = rd.root_space(gamma)?;
    let basis = gram_schmidt(space.vectors(), rd.inner().gram());
    let mut out = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            if a != b {
                out.push(g.bracket_coords(x, &g.theta_coords(y)));
            }
        }
    }
    let span = SubspaceBasis::span(g.dim(), out);
    if !rd.m_basis().contains_subspace(&span) {
        return Err(Error::RootData(format!(
            "m^gamma is not inside m for gamma = {}",
            fmt_covector(gamma)
        )));
    }
    Ok(span)
}

/// `m` is the sum of the `m^gamma` over the simple roots, and over all positive roots.
pub fn m_gamma_sum_check(rd: &RootDatum) -> CheckReport {
    let mut rep = CheckReport::new("m is the sum of the m^gamma");
    let dim = rd.algebra().dim();
    let total = |idx: &[usize]| -> Result<SubspaceBasis> {
        let mut vs = Vec::new();
        for &i in idx {
            vs.extend(m_gamma(rd, &rd.positive()[i])?.into_vectors());
        }
        Ok(SubspaceBasis::span(dim, vs))
    };
    let all: Vec<usize> = (0..rd.positive().len()).collect();
    for (label, idx) in [("simple", rd.simple().to_vec()), ("positive", all)] {
        let ok = total(&idx).is_ok_and(|s| s.same_space(rd.m_basis()));
        rep.record(ok, || {
            format!("sum of m^gamma over {label} roots differs from m")
        });
    }
    rep
}

/// Every check above, in a fixed order.
pub fn lemma_suite(rd: &RootDatum, cfg: &SampleConfig) -> Vec<CheckReport> {
    vec![
        bracket_compatibility_check(rd),
        orthogonality_check(rd),
        coroot_identity_check(rd, cfg),
        root_space_commutators_check(rd),
        ux_check(rd, cfg),
        uxx_check(rd, cfg),
        w_zero_check(rd),
        stratification_check(rd),
        m_gamma_sum_check(rd),
    ]
}
