use num_traits::Zero;

use super::{nullspace, rank, rref, solve, MatrixQ, Rational, VecQ};
use crate::{Error, Result};

/// A subspace of `Q^n` given by linearly independent spanning vectors.
/// The empty list denotes the zero subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<VecQ>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: (0..ambient_dim)
                .map(|i| super::unit_vec(ambient_dim, i))
                .collect(),
        }
    }

    /// Trusts the caller that `vectors` are independent (checked in debug builds).
    pub(crate) fn from_independent(ambient_dim: usize, vectors: Vec<VecQ>) -> Self {
        let s = Self {
            ambient_dim,
            vectors,
        };
        debug_assert!(s.vectors.iter().all(|v| v.len() == ambient_dim));
        debug_assert_eq!(s.as_row_matrix().rank(), s.vectors.len());
        s
    }

    /// Keeps the spanning vectors in order, dropping any that depend on earlier ones.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = VecQ>) -> Self {
        let vectors: Vec<VecQ> = vectors.into_iter().collect();
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        // pivot columns of the column matrix pick out a maximal independent prefix-greedy subset
        let cols = MatrixQ::from_columns(&vectors, ambient_dim);
        let (_, pivots) = rref(&cols);
        Self {
            ambient_dim,
            vectors: pivots.into_iter().map(|p| vectors[p].clone()).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[VecQ] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<VecQ> {
        self.vectors
    }

    /// Basis vectors as columns of an `ambient x dim` matrix.
    pub fn as_column_matrix(&self) -> MatrixQ {
        MatrixQ::from_columns(&self.vectors, self.ambient_dim)
    }

    pub fn as_row_matrix(&self) -> MatrixQ {
        if self.vectors.is_empty() {
            return MatrixQ::zeros(0, self.ambient_dim);
        }
        MatrixQ::from_rows(self.vectors.clone())
    }

    /// Coordinates of `v` in this basis, or `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<VecQ> {
        if self.vectors.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve(&self.as_column_matrix(), v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.vectors.is_empty() {
            return false;
        }
        let m = self
            .as_row_matrix()
            .vstack(&MatrixQ::from_rows(vec![v.to_vec()]));
        m.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        if other.is_zero() {
            return true;
        }
        let m = self.as_row_matrix().vstack(&other.as_row_matrix());
        m.rank() == self.dim()
    }

    pub fn same_space(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(Self::span(
            self.ambient_dim,
            self.vectors.iter().chain(&other.vectors).cloned(),
        ))
    }

    /// Canonical basis: the nonzero rows of the RREF of the stacked vectors.
    pub fn canonical(&self) -> SubspaceBasis {
        if self.is_zero() {
            return self.clone();
        }
        let (r, pivots) = rref(&self.as_row_matrix());
        Self {
            ambient_dim: self.ambient_dim,
            vectors: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    /// Image of the subspace under a linear map (as a spanning set reduced to a basis).
    pub fn image(&self, m: &MatrixQ) -> SubspaceBasis {
        Self::span(m.rows(), self.vectors.iter().map(|v| m.mul_vec(v)))
    }
}

/// Precomputed coordinate extraction for a fixed basis: a square system on
/// independent rows, followed by an exact membership check.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    basis: MatrixQ,
    pivots: Vec<usize>,
    inverse: MatrixQ,
}

impl CoordinateMap {
    pub fn new(basis: &SubspaceBasis) -> Self {
        let m = basis.as_column_matrix();
        let pivots = rref(&m.transpose()).1;
        debug_assert_eq!(pivots.len(), basis.dim());
        let all: Vec<usize> = (0..basis.dim()).collect();
        let inverse = m
            .select(&pivots, &all)
            .inverse()
            .expect("independent rows of a basis form an invertible block");
        Self {
            basis: m,
            pivots,
            inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Rational]) -> Option<VecQ> {
        let picked: VecQ = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let c = self.inverse.mul_vec(&picked);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    /// Vector with the given coordinates.
    pub fn vector(&self, c: &[Rational]) -> VecQ {
        self.basis.mul_vec(c)
    }
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::AmbientMismatch(a.ambient_dim, b.ambient_dim));
    }
    let n = a.ambient_dim;
    if a.is_zero() || b.is_zero() {
        return Ok(SubspaceBasis::zero(n));
    }
    // [A | -B] (x; y) = 0  =>  A x lies in both
    let am = a.as_column_matrix();
    let bm = b.as_column_matrix();
    let ns = nullspace(&am.hstack(&-&bm));
    let ka = a.dim();
    let vectors = ns
        .vectors()
        .iter()
        .map(|w| am.mul_vec(&w[..ka]))
        .collect::<Vec<_>>();
    let out = SubspaceBasis::span(n, vectors);
    debug_assert_eq!(
        out.dim(),
        a.dim() + b.dim() - rank(&a.as_row_matrix().vstack(&b.as_row_matrix()))
    );
    Ok(out)
}
