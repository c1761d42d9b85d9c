use std::cmp::Reverse;
use std::collections::HashMap;
use std::ops::Range;

use super::{simple_system, Covector, RootDatum};
use crate::lie::StructureConstants;
use crate::linalg::{CoordinateMap, MatrixQ, Rational, SubspaceBasis, VecQ};
use crate::{Error, Result};

/// A subalgebra of `n` spanned by whole positive root spaces, as a standalone
/// algebra whose basis is the concatenation of the root space bases.
///
/// Simple roots and heights are those of its own positive system, which for
/// a slice of rank two need not agree with the heights in the full `n`.
#[derive(Clone, Debug)]
pub struct RootedNilpotent {
    roots: Vec<Covector>,
    parent: Vec<usize>,
    offsets: Vec<usize>,
    simple: Vec<usize>,
    coefficients: Vec<Vec<i64>>,
    heights: Vec<i64>,
    index: HashMap<Covector, usize>,
    structure: StructureConstants,
    gram: MatrixQ,
    gram_inv: MatrixQ,
    embedding: SubspaceBasis,
    coords: Option<CoordinateMap>,
}

impl RootedNilpotent {
    pub(crate) fn placeholder() -> Self {
        Self {
            roots: Vec::new(),
            parent: Vec::new(),
            offsets: vec![0],
            simple: Vec::new(),
            coefficients: Vec::new(),
            heights: Vec::new(),
            index: HashMap::new(),
            structure: StructureConstants::zero(0),
            gram: MatrixQ::zeros(0, 0),
            gram_inv: MatrixQ::zeros(0, 0),
            embedding: SubspaceBasis::zero(0),
            coords: None,
        }
    }

    pub(crate) fn build(rd: &RootDatum, roots: &[usize]) -> Result<Self> {
        let dim = rd.algebra().dim();
        if roots.is_empty() {
            let mut out = Self::placeholder();
            out.embedding = SubspaceBasis::zero(dim);
            return Ok(out);
        }
        let covs: Vec<Covector> = roots.iter().map(|&i| rd.positive()[i].clone()).collect();
        let (simple0, coeffs0, heights0) = simple_system(&covs)?;
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by(|&i, &j| {
            (heights0[i], Reverse(&covs[i])).cmp(&(heights0[j], Reverse(&covs[j])))
        });
        let mut rank_of = vec![0; roots.len()];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let mut simple_perm: Vec<usize> = (0..simple0.len()).collect();
        simple_perm.sort_by_key(|&k| rank_of[simple0[k]]);
        let mut simple: Vec<usize> = simple0.iter().map(|&i| rank_of[i]).collect();
        simple.sort();

        let parent: Vec<usize> = order.iter().map(|&i| roots[i]).collect();
        let mut offsets = vec![0];
        let mut vectors: Vec<VecQ> = Vec::new();
        for &p in &parent {
            let space = rd.positive_space(p);
            vectors.extend(space.vectors().iter().cloned());
            offsets.push(vectors.len());
        }
        let embedding = SubspaceBasis::from_independent(dim, vectors);
        let structure = rd.algebra().structure().restrict(&embedding)?;
        let gram = rd.inner().restrict(&embedding);
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::NotPositiveDefinite("inner product degenerate on n".into()))?;
        let roots_out: Vec<Covector> = order.iter().map(|&i| covs[i].clone()).collect();
        let index = roots_out
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(Self {
            coefficients: order
                .iter()
                .map(|&i| simple_perm.iter().map(|&k| coeffs0[i][k]).collect())
                .collect(),
            heights: order.iter().map(|&i| heights0[i]).collect(),
            roots: roots_out,
            parent,
            offsets,
            simple,
            index,
            structure,
            gram,
            gram_inv,
            coords: Some(CoordinateMap::new(&embedding)),
            embedding,
        })
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Covector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Covector {
        &self.roots[i]
    }

    /// Index of root `i` in the positive roots of the parent datum.
    pub fn parent_index(&self, i: usize) -> usize {
        self.parent[i]
    }

    pub fn root_index(&self, gamma: &[Rational]) -> Option<usize> {
        self.index.get(gamma).copied()
    }

    /// Coordinates of `g_gamma_i` inside the basis of this algebra.
    pub fn block(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn blocks(&self) -> Vec<Range<usize>> {
        (0..self.roots.len()).map(|i| self.block(i)).collect()
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coefficients[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Root indices of height `h`.
    pub fn level(&self, h: i64) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.heights[i] == h)
            .collect()
    }

    /// Coordinates spanned by the roots of height `h` (contiguous by construction).
    pub fn level_range(&self, h: i64) -> Range<usize> {
        let lv = self.level(h);
        match (lv.first(), lv.last()) {
            (Some(&a), Some(&b)) => self.offsets[a]..self.offsets[b + 1],
            _ => 0..0,
        }
    }

    pub fn level_ranges(&self) -> Vec<Range<usize>> {
        (1..=self.max_height())
            .map(|h| self.level_range(h))
            .collect()
    }

    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let s: Covector = self.roots[i]
            .iter()
            .zip(&self.roots[j])
            .map(|(a, b)| a + b)
            .collect();
        self.index.get(&s).copied()
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// Gram matrix of the normalized inner product in this basis.
    pub fn gram(&self) -> &MatrixQ {
        &self.gram
    }

    /// Basis vectors in the coordinates of the ambient algebra.
    pub fn embedding(&self) -> &SubspaceBasis {
        &self.embedding
    }

    /// Coordinates of an ambient vector, if it lies in this algebra.
    pub fn coords(&self, v: &[Rational]) -> Option<VecQ> {
        match &self.coords {
            Some(c) => c.coords(v),
            None => crate::linalg::is_zero_vec(v).then(Vec::new),
        }
    }

    /// Ambient vector with the given coordinates.
    pub fn embed(&self, c: &[Rational]) -> VecQ {
        match &self.coords {
            Some(map) => map.vector(c),
            None => crate::linalg::zero_vec(self.embedding.ambient_dim()),
        }
    }

    /// Adjoint of `d` with respect to the inner product: `G^-1 d^t G`.
    pub fn transpose(&self, d: &MatrixQ) -> MatrixQ {
        &(&self.gram_inv * &d.transpose()) * &self.gram
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_abelian()
    }
}
