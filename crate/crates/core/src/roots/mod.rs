//! Restricted roots of a built algebra with respect to its designated `a`:
//! root spaces, positivity, simple roots, heights, coroots, `m`, the height
//! grading and the split along the highest root.

mod checks;
mod nilpotent;

pub use checks::{
    bracket_compatibility_check, coroot_identity_check, lemma_suite, m_gamma, m_gamma_sum_check,
    orthogonality_check, root_space_commutators_check, stratification_check, ux_check, uxx_check,
    w_zero_check, CheckReport, SampleConfig, DEFAULT_SEED,
};
pub use nilpotent::RootedNilpotent;

use std::cmp::Reverse;
use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::BuiltAlgebra;
use crate::lie::{cartan_decompose, centralizer, InnerProduct, LieAlgebra};
use crate::linalg::{
    dot, fmt_rational, intersect, simultaneous_eigenspaces, solve, sub_vec, MatrixQ, Rational,
    SubspaceBasis, VecQ,
};
use crate::{Error, Result};

/// A restricted root as its values on the designated basis of `a`.
pub type Covector = VecQ;

/// The full restricted-root apparatus of a [`BuiltAlgebra`].
///
/// Positive roots are indexed `0..positive().len()` in order of height, then
/// by covector, descending. Negative root spaces are the theta images of the
/// positive ones, basis vector by basis vector.
#[derive(Clone, Debug)]
pub struct RootDatum {
    base: BuiltAlgebra,
    inner: InnerProduct,
    positive: Vec<Covector>,
    positive_spaces: Vec<SubspaceBasis>,
    negative_spaces: Vec<SubspaceBasis>,
    index: HashMap<Covector, usize>,
    zero_space: SubspaceBasis,
    m: SubspaceBasis,
    simple: Vec<usize>,
    coefficients: Vec<Vec<i64>>,
    heights: Vec<i64>,
    omega: Option<usize>,
    c_norm: Rational,
    dual_gram: MatrixQ,
    components: Vec<Vec<usize>>,
    nilpotent: RootedNilpotent,
}

/// The partition of the positive roots by their inner product with the highest root.
#[derive(Clone, Debug)]
pub struct HighestSplit {
    pub omega: usize,
    pub sigma1: Vec<usize>,
    pub sigma0_pos: Vec<usize>,
    pub v: SubspaceBasis,
    pub z: SubspaceBasis,
    pub n0: SubspaceBasis,
}

/// Basis-independent description of a root system with multiplicities,
/// used to compare realizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSignature {
    pub rank: usize,
    /// Inner products of the simple roots, scaled so the largest diagonal entry is 2.
    pub simple_gram: Vec<Vec<String>>,
    /// `(coefficients over the simple roots, multiplicity)`, sorted.
    pub positive: Vec<(Vec<i64>, usize)>,
}

pub(crate) fn lex_sign(v: &[Rational]) -> i32 {
    v.iter()
        .find(|x| !x.is_zero())
        .map_or(0, crate::linalg::sign)
}

fn neg(v: &[Rational]) -> Covector {
    v.iter().map(|x| -x).collect()
}

/// Indecomposable roots of a positive system, with every root's coefficients
/// over them and its height.
pub(crate) fn simple_system(roots: &[Covector]) -> Result<(Vec<usize>, Vec<Vec<i64>>, Vec<i64>)> {
    let index: HashMap<&Covector, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut decomposable = vec![false; roots.len()];
    for i in 0..roots.len() {
        for j in i..roots.len() {
            let s: Covector = roots[i].iter().zip(&roots[j]).map(|(a, b)| a + b).collect();
            if let Some(&k) = index.get(&s) {
                decomposable[k] = true;
            }
        }
    }
    let simple: Vec<usize> = (0..roots.len()).filter(|&i| !decomposable[i]).collect();
    let len = roots.first().map_or(0, Vec::len);
    let s = MatrixQ::from_columns(
        &simple.iter().map(|&i| roots[i].clone()).collect::<Vec<_>>(),
        len,
    );
    if s.rank() != simple.len() {
        return Err(Error::RootData(
            "indecomposable roots are linearly dependent".into(),
        ));
    }
    let mut coefficients = Vec::with_capacity(roots.len());
    let mut heights = Vec::with_capacity(roots.len());
    for r in roots {
        let x = solve(&s, r)
            .ok_or_else(|| Error::RootData("root outside the span of the simple roots".into()))?;
        let mut c = Vec::with_capacity(x.len());
        for v in &x {
            if !v.is_integer() || v < &Rational::zero() {
                return Err(Error::RootData(format!(
                    "root has coefficient {} over the simple roots",
                    fmt_rational(v)
                )));
            }
            c.push(
                i64::try_from(v.to_integer())
                    .map_err(|_| Error::RootData("coefficient overflow".into()))?,
            );
        }
        heights.push(c.iter().sum());
        coefficients.push(c);
    }
    Ok((simple, coefficients, heights))
}

/// Splits the roots of `a` acting on `b.algebra`.
pub fn decompose(b: &BuiltAlgebra) -> Result<RootDatum> {
    let g = &b.algebra;
    let s = g.structure();
    let dim = g.dim();
    let rank = b.a_basis.dim();
    let ads: Vec<MatrixQ> = b.a_basis.vectors().iter().map(|h| s.ad(h)).collect();
    let blocks = simultaneous_eigenspaces(&ads)?;

    let mut zero_space = SubspaceBasis::zero(dim);
    let mut pos: Vec<(Covector, SubspaceBasis)> = Vec::new();
    let mut negs: HashMap<Covector, SubspaceBasis> = HashMap::new();
    for blk in blocks {
        match lex_sign(&blk.values) {
            0 => zero_space = blk.space,
            1 => pos.push((blk.values, blk.space)),
            _ => {
                negs.insert(blk.values, blk.space);
            }
        }
    }
    if pos.len() != negs.len() {
        return Err(Error::RootData(
            "roots are not symmetric under negation".into(),
        ));
    }
    if pos.is_empty() {
        return Err(Error::RootData("no restricted roots".into()));
    }

    let covs: Vec<Covector> = pos.iter().map(|p| p.0.clone()).collect();
    let (simple0, coeffs0, heights0) = simple_system(&covs)?;
    if simple0.len() != rank {
        return Err(Error::RootData(format!(
            "{} simple roots for a of dimension {rank}",
            simple0.len()
        )));
    }
    let mut order: Vec<usize> = (0..pos.len()).collect();
    order.sort_by(|&i, &j| (heights0[i], Reverse(&covs[i])).cmp(&(heights0[j], Reverse(&covs[j]))));
    let mut rank_of = vec![0; pos.len()];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let mut simple: Vec<usize> = simple0.iter().map(|&i| rank_of[i]).collect();
    // coefficients are listed over the simple roots in their final order
    let mut simple_perm: Vec<usize> = (0..simple0.len()).collect();
    simple_perm.sort_by_key(|&k| rank_of[simple0[k]]);
    simple.sort();
    let positive: Vec<Covector> = order.iter().map(|&i| covs[i].clone()).collect();
    let coefficients: Vec<Vec<i64>> = order
        .iter()
        .map(|&i| simple_perm.iter().map(|&k| coeffs0[i][k]).collect())
        .collect();
    let heights: Vec<i64> = order.iter().map(|&i| heights0[i]).collect();

    let mut positive_spaces = Vec::with_capacity(pos.len());
    let mut negative_spaces = Vec::with_capacity(pos.len());
    for &i in &order {
        let (cov, space) = &pos[i];
        let img = space.image(g.theta());
        let from_eigen = negs
            .get(&neg(cov))
            .ok_or_else(|| Error::RootData("negative of a root is not a root".into()))?;
        if !img.same_space(from_eigen) {
            return Err(Error::RootData(
                "theta does not exchange g_a and g_-a".into(),
            ));
        }
        positive_spaces.push(space.clone());
        negative_spaces.push(img);
    }
    let index: HashMap<Covector, usize> = positive
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();

    // Killing form on a, and the dual form on covectors before normalization
    let va = b.a_basis.as_column_matrix();
    let ka = &(&va.transpose() * g.killing()) * &va;
    let ka_inv = ka
        .inverse()
        .ok_or_else(|| Error::RootData("Killing form is degenerate on a".into()))?;
    let inner1 = |x: &[Rational], y: &[Rational]| dot(x, &ka_inv.mul_vec(y));

    let components = simple_components(&simple, &positive, &inner1);
    let omega = if components.len() == 1 {
        let top = *heights.iter().max().unwrap();
        let tops: Vec<usize> = (0..positive.len()).filter(|&i| heights[i] == top).collect();
        if tops.len() != 1 {
            return Err(Error::RootData("highest root is not unique".into()));
        }
        Some(tops[0])
    } else {
        None
    };
    let two = Rational::from_integer(2.into());
    let c_norm = match omega {
        Some(w) => inner1(&positive[w], &positive[w]) / &two,
        None => positive.iter().map(|r| inner1(r, r)).max().unwrap() / &two,
    };
    let dual_gram = ka_inv.scale(&c_norm.recip());
    let inner = InnerProduct::build(g, c_norm.clone())?;

    let (k, _) = cartan_decompose(g)?;
    let m = centralizer(g, &b.a_basis, &k)?;
    if !m.same_space(&intersect(&zero_space, &k)?) {
        return Err(Error::RootData(
            "centralizer of a in k differs from g_0 and k".into(),
        ));
    }
    if m.dim() + rank != zero_space.dim() {
        return Err(Error::RootData("g_0 is not m + a".into()));
    }
    let total: usize = zero_space.dim()
        + 2 * positive_spaces
            .iter()
            .map(SubspaceBasis::dim)
            .sum::<usize>();
    if total != dim {
        return Err(Error::RootData(format!(
            "root spaces and g_0 have total dimension {total}, not {dim}"
        )));
    }

    let mut rd = RootDatum {
        base: b.clone(),
        inner,
        positive,
        positive_spaces,
        negative_spaces,
        index,
        zero_space,
        m,
        simple,
        coefficients,
        heights,
        omega,
        c_norm,
        dual_gram,
        components,
        nilpotent: RootedNilpotent::placeholder(),
    };
    let all: Vec<usize> = (0..rd.positive.len()).collect();
    rd.nilpotent = rd.nilpotent_of(&all)?;
    Ok(rd)
}

/// Groups simple roots into orthogonal components (indices into `positive`).
fn simple_components(
    simple: &[usize],
    positive: &[Covector],
    inner: &dyn Fn(&[Rational], &[Rational]) -> Rational,
) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..simple.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for a in 0..simple.len() {
        for b in a + 1..simple.len() {
            if !inner(&positive[simple[a]], &positive[simple[b]]).is_zero() {
                let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                label[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for a in 0..simple.len() {
        let r = find(&mut label, a);
        let slot = *seen.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(simple[a]);
    }
    groups
}

impl RootDatum {
    pub fn base(&self) -> &BuiltAlgebra {
        &self.base
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.base.algebra
    }

    pub fn inner(&self) -> &InnerProduct {
        &self.inner
    }

    pub fn rank(&self) -> usize {
        self.base.a_basis.dim()
    }

    pub fn a_basis(&self) -> &SubspaceBasis {
        &self.base.a_basis
    }

    pub fn positive(&self) -> &[Covector] {
        &self.positive
    }

    /// All roots: the positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Covector> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|r| neg(r)));
        out
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.positive_spaces[i].dim()
    }

    /// Index of a positive root.
    pub fn positive_index(&self, gamma: &[Rational]) -> Option<usize> {
        self.index.get(gamma).copied()
    }

    fn require_positive(&self, gamma: &[Rational]) -> Result<usize> {
        self.positive_index(gamma)
            .ok_or_else(|| Error::NotARoot(fmt_covector(gamma)))
    }

    pub fn is_root(&self, gamma: &[Rational]) -> bool {
        self.index.contains_key(gamma) || self.index.contains_key(&neg(gamma))
    }

    /// `g_gamma` for any root, positive or negative.
    pub fn root_space(&self, gamma: &[Rational]) -> Result<&SubspaceBasis> {
        if let Some(&i) = self.index.get(gamma) {
            return Ok(&self.positive_spaces[i]);
        }
        if let Some(&i) = self.index.get(&neg(gamma)) {
            return Ok(&self.negative_spaces[i]);
        }
        Err(Error::NotARoot(fmt_covector(gamma)))
    }

    pub fn positive_space(&self, i: usize) -> &SubspaceBasis {
        &self.positive_spaces[i]
    }

    pub fn negative_space(&self, i: usize) -> &SubspaceBasis {
        &self.negative_spaces[i]
    }

    /// `g_0 = m + a`.
    pub fn zero_space(&self) -> &SubspaceBasis {
        &self.zero_space
    }

    pub fn m_basis(&self) -> &SubspaceBasis {
        &self.m
    }

    /// Basis of `m + a`: the basis of `m` followed by the designated basis of `a`.
    pub fn m_plus_a(&self) -> Vec<VecQ> {
        let mut out = self.m.vectors().to_vec();
        out.extend(self.base.a_basis.vectors().iter().cloned());
        out
    }

    /// Indices of the simple roots.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<Covector> {
        self.simple
            .iter()
            .map(|&i| self.positive[i].clone())
            .collect()
    }

    /// Coefficients of positive root `i` over the simple roots.
    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coefficients[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// The highest root, when the system is indecomposable.
    pub fn omega(&self) -> Option<usize> {
        self.omega
    }

    pub fn c_norm(&self) -> &Rational {
        &self.c_norm
    }

    /// Groups of simple-root indices spanning mutually orthogonal subsystems.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_decomposable(&self) -> bool {
        self.components.len() > 1
    }

    /// `<gamma, delta>` under the normalized form.
    pub fn root_inner(&self, gamma: &[Rational], delta: &[Rational]) -> Rational {
        dot(gamma, &self.dual_gram.mul_vec(delta))
    }

    /// `H_gamma` in `a`, with `delta(H_gamma) = <delta, gamma>`, in coordinates of g.
    pub fn coroot(&self, gamma: &[Rational]) -> Result<VecQ> {
        if !self.is_root(gamma) {
            return Err(Error::NotARoot(fmt_covector(gamma)));
        }
        Ok(self.coroot_unchecked(gamma))
    }

    pub(crate) fn coroot_unchecked(&self, gamma: &[Rational]) -> VecQ {
        let x = self.dual_gram.mul_vec(gamma);
        self.base.a_basis.as_column_matrix().mul_vec(&x)
    }

    /// Index of `gamma_i + gamma_j` among the positive roots.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let s: Covector = self.positive[i]
            .iter()
            .zip(&self.positive[j])
            .map(|(a, b)| a + b)
            .collect();
        self.index.get(&s).copied()
    }

    /// Whether `gamma_i - gamma_j` is a root (zero is not).
    pub fn difference_is_root(&self, i: usize, j: usize) -> bool {
        i != j && self.is_root(&sub_vec(&self.positive[i], &self.positive[j]))
    }

    /// Index of `a * gamma_i + b * gamma_j` among the positive roots.
    pub fn combination_index(&self, a: i64, i: usize, b: i64, j: usize) -> Option<usize> {
        let (a, b) = (
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
        );
        let s: Covector = self.positive[i]
            .iter()
            .zip(&self.positive[j])
            .map(|(x, y)| &a * x + &b * y)
            .collect();
        self.index.get(&s).copied()
    }

    /// The nilpotent algebra `n` on the positive root spaces.
    pub fn nilpotent(&self) -> &RootedNilpotent {
        &self.nilpotent
    }

    /// The subalgebra of `n` on the given positive roots (closure is checked).
    pub fn nilpotent_of(&self, roots: &[usize]) -> Result<RootedNilpotent> {
        RootedNilpotent::build(self, roots)
    }

    /// `n` of the simple summand containing the simple roots in `component`.
    pub fn component_nilpotent(&self, component: usize) -> Result<RootedNilpotent> {
        let group = self
            .components
            .get(component)
            .ok_or_else(|| Error::RootData(format!("no component {component}")))?;
        let pos: Vec<usize> = (0..self.simple.len())
            .filter(|&k| group.contains(&self.simple[k]))
            .collect();
        let roots: Vec<usize> = (0..self.positive.len())
            .filter(|&i| pos.iter().any(|&k| self.coefficients[i][k] != 0))
            .collect();
        self.nilpotent_of(&roots)
    }

    /// `n^{gamma, delta}`: the positive roots in the span of `gamma` and `delta`.
    pub fn rank_two_subalgebra(
        &self,
        gamma: &[Rational],
        delta: &[Rational],
    ) -> Result<RootedNilpotent> {
        let i = self.require_positive(gamma)?;
        let j = self.require_positive(delta)?;
        let r = self.rank();
        let base =
            MatrixQ::from_columns(&[self.positive[i].clone(), self.positive[j].clone()], r).rank();
        let roots: Vec<usize> = (0..self.positive.len())
            .filter(|&k| {
                MatrixQ::from_columns(
                    &[
                        self.positive[i].clone(),
                        self.positive[j].clone(),
                        self.positive[k].clone(),
                    ],
                    r,
                )
                .rank()
                    == base
            })
            .collect();
        self.nilpotent_of(&roots)
    }

    /// `g_h` for any integer height; `g_0` is the zero space.
    pub fn grading(&self, h: i64) -> SubspaceBasis {
        let dim = self.algebra().dim();
        if h == 0 {
            return self.zero_space.clone();
        }
        let spaces = if h > 0 {
            &self.positive_spaces
        } else {
            &self.negative_spaces
        };
        let vectors: Vec<VecQ> = (0..self.positive.len())
            .filter(|&i| self.heights[i] == h.abs())
            .flat_map(|i| spaces[i].vectors().iter().cloned())
            .collect();
        SubspaceBasis::span(dim, vectors)
    }

    /// Basis of `n`, root space by root space.
    pub fn n_basis(&self) -> &SubspaceBasis {
        self.nilpotent.embedding()
    }

    /// The split of the positive roots along the highest root.
    pub fn highest_split(&self) -> Result<HighestSplit> {
        let w = self.omega.ok_or(Error::DecomposableSystem)?;
        let omega = &self.positive[w];
        let dim = self.algebra().dim();
        let (mut sigma1, mut sigma0_pos) = (Vec::new(), Vec::new());
        let (one, two) = (Rational::one(), Rational::from_integer(2.into()));
        for i in 0..self.positive.len() {
            let ip = self.root_inner(&self.positive[i], omega);
            if i == w {
                if ip != two {
                    return Err(Error::RootData("highest root does not have norm 2".into()));
                }
            } else if ip == one {
                sigma1.push(i);
            } else if ip.is_zero() {
                sigma0_pos.push(i);
            } else {
                return Err(Error::RootData(format!(
                    "positive root with <gamma, omega> = {}",
                    fmt_rational(&ip)
                )));
            }
        }
        let gather = |idx: &[usize]| {
            SubspaceBasis::span(
                dim,
                idx.iter()
                    .flat_map(|&i| self.positive_spaces[i].vectors().iter().cloned()),
            )
        };
        Ok(HighestSplit {
            omega: w,
            v: gather(&sigma1),
            z: self.positive_spaces[w].clone(),
            n0: gather(&sigma0_pos),
            sigma1,
            sigma0_pos,
        })
    }

    /// Root data up to relabelling of the simple roots.
    pub fn signature(&self) -> RootSignature {
        let r = self.simple.len();
        let simple = self.simple_roots();
        let gram: Vec<Vec<Rational>> = simple
            .iter()
            .map(|x| simple.iter().map(|y| self.root_inner(x, y)).collect())
            .collect();
        let top = (0..r)
            .map(|i| gram[i][i].clone())
            .max()
            .unwrap_or_else(Rational::one);
        let scale = Rational::from_integer(2.into()) / top;
        let mut best: Option<RootSignature> = None;
        for perm in permutations(r) {
            let simple_gram: Vec<Vec<String>> = perm
                .iter()
                .map(|&a| {
                    perm.iter()
                        .map(|&b| fmt_rational(&(&gram[a][b] * &scale)))
                        .collect()
                })
                .collect();
            let mut positive: Vec<(Vec<i64>, usize)> = (0..self.positive.len())
                .map(|i| {
                    (
                        perm.iter().map(|&a| self.coefficients[i][a]).collect(),
                        self.multiplicity(i),
                    )
                })
                .collect();
            positive.sort();
            let cand = RootSignature {
                rank: r,
                simple_gram,
                positive,
            };
            if best.as_ref().is_none_or(|b| sig_key(&cand) < sig_key(b)) {
                best = Some(cand);
            }
        }
        best.expect("at least one permutation")
    }
}

fn sig_key(s: &RootSignature) -> (&Vec<Vec<String>>, &Vec<(Vec<i64>, usize)>) {
    (&s.simple_gram, &s.positive)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `(a, b, ...)` with rational entries.
pub fn fmt_covector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests;
