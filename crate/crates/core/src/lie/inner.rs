use num_traits::Zero;

use super::{Element, LieAlgebra};
use crate::linalg::{dot, fmt_rational, MatrixQ, Rational, SubspaceBasis};
use crate::{Error, Result};

/// `<X, Y> = -c B(X, theta Y)`, positive definite when theta is a Cartan involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: MatrixQ,
    c: Rational,
}

impl InnerProduct {
    pub fn build(g: &LieAlgebra, c: Rational) -> Result<Self> {
        if c <= Rational::zero() {
            return Err(Error::NonPositiveC(fmt_rational(&c)));
        }
        let gram = (g.killing() * g.theta()).scale(&-c.clone());
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite(
                "-B(., theta .) is not positive definite; theta is not a Cartan involution".into(),
            ));
        }
        Ok(Self { gram, c })
    }

    pub fn gram(&self) -> &MatrixQ {
        &self.gram
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn inner(&self, x: &Element, y: &Element) -> Rational {
        self.inner_coords(x.coords(), y.coords())
    }

    pub fn inner_coords(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.gram.mul_vec(y))
    }

    pub fn norm_sq(&self, x: &[Rational]) -> Rational {
        self.inner_coords(x, x)
    }

    /// Gram matrix of the form restricted to the span of `basis`, in that basis.
    pub fn restrict(&self, basis: &SubspaceBasis) -> MatrixQ {
        let v = basis.as_column_matrix();
        &(&v.transpose() * &self.gram) * &v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::tests::sl2;
    use crate::linalg::q;

    #[test]
    fn sl2_inner_products() {
        let g = sl2();
        let ip = InnerProduct::build(&g, q(1)).unwrap();
        let (h, e) = (g.basis_element(0), g.basis_element(1));
        assert_eq!(ip.inner(&h, &h), q(8));
        assert_eq!(ip.inner(&e, &e), q(4));
        assert_eq!(ip.inner(&e, &h), q(0));
    }

    #[test]
    fn nonpositive_c_rejected() {
        let g = sl2();
        assert!(matches!(
            InnerProduct::build(&g, q(0)),
            Err(Error::NonPositiveC(_))
        ));
        assert!(matches!(
            InnerProduct::build(&g, q(-2)),
            Err(Error::NonPositiveC(_))
        ));
    }
}
