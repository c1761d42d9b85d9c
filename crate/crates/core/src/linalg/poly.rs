use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_rational, Rational};
use crate::{Error, Result};

/// Integers above this size are not factored when enumerating rational-root candidates.
const FACTOR_LIMIT: u64 = 1 << 40;

/// Univariate polynomial over Q, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        Poly::new((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic: same roots, each simple.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Primitive integer polynomial with positive leading coefficient and the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let g = if ints.last().is_some_and(|l| l.is_negative()) {
            -g
        } else {
            g
        };
        if !g.is_zero() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        ints
    }

    /// All distinct rational roots, ascending.
    ///
    /// Candidates come from the rational-root theorem applied to the primitive
    /// square-free part; the search gives up with `EigenSearch` when a
    /// coefficient is too large to factor by trial division.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::EigenSearch("zero polynomial has every root".into()));
        }
        let mut p = self.square_free();
        let mut roots = Vec::new();
        if p.coeffs.first().is_some_and(Zero::is_zero) {
            roots.push(Rational::zero());
            p = Poly::new(p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = p.primitive_integer();
            let lead_divs = divisors(ints.last().unwrap())?;
            let const_divs = divisors(&ints[0])?;
            let mut candidates: Vec<Rational> = Vec::new();
            for num in &const_divs {
                for den in &lead_divs {
                    let r = Rational::new(num.clone(), den.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                if p.degree().unwrap_or(0) == 0 {
                    break;
                }
                if p.eval(&r).is_zero() {
                    p = p.div_rem(&Poly::linear_root(&r)).0;
                    roots.push(r);
                }
            }
        }
        roots.sort();
        Ok(roots)
    }
}

/// Positive divisors of `|n|` by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= FACTOR_LIMIT)
        .ok_or_else(|| Error::EigenSearch(format!("coefficient {n} too large to factor")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_rational(c),
                1 => format!("{}x", fmt_rational(c)),
                _ => format!("{}x^{i}", fmt_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    fn from_roots(roots: &[Rational]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    #[test]
    fn roots_with_multiplicity_and_fractions() {
        let p = from_roots(&[qf(1, 2), qf(1, 2), q(-1), q(0), q(6)]).scale(&qf(7, 3));
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![q(-1), q(0), qf(1, 2), q(6)]
        );
    }

    #[test]
    fn irrational_roots_skipped() {
        // x^2 - 2
        let p = Poly::new(vec![q(-2), q(0), q(1)]);
        assert!(p.rational_roots().unwrap().is_empty());
    }

    #[test]
    fn square_free_of_cube() {
        let p = from_roots(&[q(3), q(3), q(3)]);
        assert_eq!(p.square_free(), Poly::linear_root(&q(3)));
    }

    #[test]
    fn divisors_listed_ascending() {
        let d: Vec<u64> = divisors(&BigInt::from(36))
            .unwrap()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }
}
