use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::StructureConstants;
use crate::linalg::{dot, eigenspace, unit_vec, MatrixQ, Rational, SubspaceBasis, VecQ};
use crate::{Error, Result};

/// A real Lie algebra with a Cartan involution, validated at construction.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    labels: Vec<String>,
    structure: StructureConstants,
    theta: MatrixQ,
    killing: MatrixQ,
    fingerprint: u64,
}

/// An element of a specific [`LieAlgebra`], stored as basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    coords: VecQ,
    algebra: u64,
}

impl Element {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> VecQ {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl LieAlgebra {
    /// Validates antisymmetry (structural), Jacobi, and that `theta` is an
    /// involutive automorphism, then caches the Killing form.
    pub fn new(labels: Vec<String>, structure: StructureConstants, theta: MatrixQ) -> Result<Self> {
        let dim = structure.dim();
        if labels.len() != dim {
            return Err(Error::Shape(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        if theta.rows() != dim || theta.cols() != dim {
            return Err(Error::Shape(format!(
                "theta is {}x{}, algebra has dimension {dim}",
                theta.rows(),
                theta.cols()
            )));
        }
        structure.check_jacobi()?;
        if &theta * &theta != MatrixQ::identity(dim) {
            return Err(Error::ThetaNotInvolutive);
        }
        let cols = theta.columns();
        for i in 0..dim {
            for j in i + 1..dim {
                let lhs = theta.mul_vec(&structure.basis_bracket_vec(i, j));
                if lhs != structure.bracket(&cols[i], &cols[j]) {
                    return Err(Error::ThetaNotAutomorphism(i, j));
                }
            }
        }
        let killing = killing_matrix(&structure);
        debug_assert_eq!(&(&theta.transpose() * &killing) * &theta, killing);

        let mut h = DefaultHasher::new();
        structure.hash(&mut h);
        theta.hash(&mut h);
        let fingerprint = h.finish();
        Ok(Self {
            labels,
            structure,
            theta,
            killing,
            fingerprint,
        })
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn theta(&self) -> &MatrixQ {
        &self.theta
    }

    /// Gram matrix of the Killing form in the standard basis.
    pub fn killing(&self) -> &MatrixQ {
        &self.killing
    }

    pub fn element(&self, coords: VecQ) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Shape(format!(
                "element has {} coordinates, algebra dimension is {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(Element {
            coords,
            algebra: self.fingerprint,
        })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element {
            coords: unit_vec(self.dim(), i),
            algebra: self.fingerprint,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.algebra == self.fingerprint {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element {
            coords: self.structure.bracket(&x.coords, &y.coords),
            algebra: self.fingerprint,
        })
    }

    pub fn ad_matrix(&self, x: &Element) -> Result<MatrixQ> {
        self.check(x)?;
        Ok(self.structure.ad(&x.coords))
    }

    /// `B(x, y) = tr(ad x ad y)`.
    pub fn killing_form(&self, x: &Element, y: &Element) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(dot(&x.coords, &self.killing.mul_vec(&y.coords)))
    }

    pub fn apply_theta(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(Element {
            coords: self.theta.mul_vec(&x.coords),
            algebra: self.fingerprint,
        })
    }

    pub fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> VecQ {
        self.structure.bracket(x, y)
    }

    pub fn theta_coords(&self, x: &[Rational]) -> VecQ {
        self.theta.mul_vec(x)
    }

    pub fn same_algebra(&self, other: &LieAlgebra) -> bool {
        self.fingerprint == other.fingerprint
    }
}

fn killing_matrix(s: &StructureConstants) -> MatrixQ {
    let dim = s.dim();
    let ads: Vec<MatrixQ> = (0..dim).map(|i| s.ad_basis(i)).collect();
    let adt: Vec<MatrixQ> = ads.iter().map(MatrixQ::transpose).collect();
    let mut k = MatrixQ::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            // tr(A B) = sum of entrywise products of A and B^T
            let v = dot(ads[i].data(), adt[j].data());
            k[(i, j)] = v.clone();
            k[(j, i)] = v;
        }
    }
    k
}

/// `(k, p)`: the `+1` and `-1` eigenspaces of theta, with the bracket relations checked.
pub fn cartan_decompose(g: &LieAlgebra) -> Result<(SubspaceBasis, SubspaceBasis)> {
    let k = eigenspace(g.theta(), &Rational::one());
    let p = eigenspace(g.theta(), &-Rational::one());
    if k.dim() + p.dim() != g.dim() {
        return Err(Error::ThetaNotInvolutive);
    }
    let s = g.structure();
    for (x_space, y_space, target, name) in [
        (&k, &k, &k, "[k,k] in k"),
        (&k, &p, &p, "[k,p] in p"),
        (&p, &p, &k, "[p,p] in k"),
    ] {
        for x in x_space.vectors() {
            for y in y_space.vectors() {
                if !target.contains(&s.bracket(x, y)) {
                    return Err(Error::NotClosed(name.to_string()));
                }
            }
        }
    }
    Ok((k, p))
}

pub fn centralizer(
    g: &LieAlgebra,
    s: &SubspaceBasis,
    within: &SubspaceBasis,
) -> Result<SubspaceBasis> {
    g.structure().centralizer(s, within)
}

pub fn subalgebra_generated(g: &LieAlgebra, seed: &SubspaceBasis) -> SubspaceBasis {
    g.structure().subalgebra_generated(seed)
}
