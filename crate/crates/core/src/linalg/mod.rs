//! Exact rational linear algebra.
//!
//! Everything downstream (root spaces, derivation spaces, extensions) is a
//! nullspace or an eigenspace of some rational matrix, so this module is the
//! only place where elimination happens. Elimination is fraction-free on the
//! forward pass and rational on the back-substitution; pivots are always the
//! first nonzero entry in column order, which makes every output
//! reproducible.

mod eigen;
mod elim;
mod matrix;
mod poly;
mod subspace;

pub use eigen::{
    characteristic_polynomial, eigenspace, rational_eigenvalues, simultaneous_eigenspaces,
    EigenBlock, EigenSplit,
};
pub use elim::{nullspace, rank, rref, solve, solve_matrix};
pub use matrix::MatrixQ;
pub use poly::Poly;
pub use subspace::{intersect, CoordinateMap, SubspaceBasis};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar, always kept in lowest terms.
pub type Rational = BigRational;

/// Dense column vector of rationals.
pub type VecQ = Vec<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(n: usize) -> VecQ {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> VecQ {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> VecQ {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> VecQ {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rational, v: &[Rational]) -> VecQ {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`, skipping zero coefficients.
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

/// Linear combination `sum_i coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Rational], vectors: &[VecQ], len: usize) -> VecQ {
    let mut out = zero_vec(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (denominator must be nonzero).
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub(crate) fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Orthogonal (not normalized) basis of the span of `vectors` under `gram`,
/// by exact Gram-Schmidt; dependent vectors are dropped.
pub fn gram_schmidt(vectors: &[VecQ], gram: &MatrixQ) -> Vec<VecQ> {
    let mut out: Vec<(VecQ, VecQ, Rational)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, gu, nu) in &out {
            let c = dot(&w, gu) / nu;
            axpy(&mut w, &-c, u);
        }
        if is_zero_vec(&w) {
            continue;
        }
        let gw = gram.mul_vec(&w);
        let nw = dot(&w, &gw);
        out.push((w, gw, nw));
    }
    out.into_iter().map(|(u, _, _)| u).collect()
}
