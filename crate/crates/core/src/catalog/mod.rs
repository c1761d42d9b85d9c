//! Concrete real semisimple algebras with a designated maximal abelian
//! subspace `a` of `p`: classical matrix realizations and split forms built
//! from a Chevalley basis.

mod chevalley;
mod classical;
mod spec;

pub use spec::{AlgebraSpec, CartanType};

use crate::lie::{cartan_decompose, centralizer, AlgebraJson, LieAlgebra};
use crate::linalg::{EigenSplit, SubspaceBasis};
use crate::{Error, Result};

/// A Lie algebra together with its designated `a`, validated on construction.
#[derive(Clone, Debug)]
pub struct BuiltAlgebra {
    pub algebra: LieAlgebra,
    pub a_basis: SubspaceBasis,
    pub realization_note: String,
    /// Catalog entry this came from; `None` for algebras loaded from files.
    pub spec: Option<AlgebraSpec>,
    pub name: String,
}

impl BuiltAlgebra {
    /// Checks that `a` sits in `p`, is abelian, acts diagonalizably over Q and
    /// is maximal, and that the Killing form has the right signs on `k` and `p`.
    pub fn new(
        algebra: LieAlgebra,
        a_basis: SubspaceBasis,
        name: String,
        realization_note: String,
        spec: Option<AlgebraSpec>,
    ) -> Result<Self> {
        if a_basis.ambient_dim() != algebra.dim() {
            return Err(Error::AmbientMismatch(a_basis.ambient_dim(), algebra.dim()));
        }
        let (k, p) = cartan_decompose(&algebra)?;
        if !p.contains_subspace(&a_basis) {
            return Err(Error::BadCartanSubspace("a is not contained in p".into()));
        }
        let s = algebra.structure();
        let hs = a_basis.vectors();
        for (i, x) in hs.iter().enumerate() {
            for y in &hs[i + 1..] {
                if !crate::linalg::is_zero_vec(&s.bracket(x, y)) {
                    return Err(Error::BadCartanSubspace("a is not abelian".into()));
                }
            }
            EigenSplit::compute(&s.ad(x))?.require_full()?;
        }
        if !centralizer(&algebra, &a_basis, &p)?.same_space(&a_basis) {
            return Err(Error::BadCartanSubspace(
                "a is not maximal abelian in p".into(),
            ));
        }
        let killing_on = |sub: &SubspaceBasis| {
            let v = sub.as_column_matrix();
            &(&v.transpose() * algebra.killing()) * &v
        };
        if !(-&killing_on(&k)).is_positive_definite() && k.dim() > 0 {
            return Err(Error::NotPositiveDefinite(
                "Killing form is not negative definite on k".into(),
            ));
        }
        if !killing_on(&p).is_positive_definite() {
            return Err(Error::NotPositiveDefinite(
                "Killing form is not positive definite on p".into(),
            ));
        }
        Ok(Self {
            algebra,
            a_basis,
            realization_note,
            spec,
            name,
        })
    }

    pub fn real_rank(&self) -> usize {
        self.a_basis.dim()
    }

    pub fn exceptional_expected(&self) -> bool {
        self.spec.is_some_and(|s| s.exceptional_expected())
    }

    pub fn to_json(&self) -> Result<AlgebraJson> {
        let mut j = AlgebraJson::from_algebra(&self.algebra)?;
        j.name = Some(self.name.clone());
        j.a_basis = Some(crate::lie::matrix_to_strings(&self.a_basis.as_row_matrix()));
        Ok(j)
    }

    /// Loads an algebra file; the designated `a` must be present.
    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let algebra = j.to_algebra()?;
        let rows = j
            .a_basis
            .as_ref()
            .ok_or_else(|| Error::BadCartanSubspace("algebra file has no a_basis".into()))?;
        let rows = crate::lie::strings_to_rows(rows)?;
        if rows.iter().any(|r| r.len() != algebra.dim()) {
            return Err(Error::Shape(
                "a_basis rows must have one entry per basis element".into(),
            ));
        }
        let n = rows.len();
        let a = SubspaceBasis::span(algebra.dim(), rows);
        if a.dim() != n {
            return Err(Error::BadCartanSubspace(
                "a_basis rows are dependent".into(),
            ));
        }
        let name = j.name.clone().unwrap_or_else(|| "unnamed".into());
        let spec = name.parse::<AlgebraSpec>().ok();
        Self::new(algebra, a, name, "loaded from file".into(), spec)
    }
}

/// Builds a catalog algebra.
pub fn build(spec: &AlgebraSpec) -> Result<BuiltAlgebra> {
    spec.validate()?;
    let (algebra, a, note) = match *spec {
        AlgebraSpec::SlR { n } => {
            let (g, a) = classical::to_algebra(&classical::sl_r(n))?;
            (
                g,
                a,
                "traceless real matrices, theta X = -X^T, a = diagonal".to_string(),
            )
        }
        AlgebraSpec::So { p, q } => {
            let (g, a) = classical::to_algebra(&classical::unitary_type(p, q, 1, false))?;
            (
                g,
                a,
                format!(
                    "{}x{} real matrices preserving I_{{{p},{q}}}, theta X = -X^T",
                    p + q,
                    p + q
                ),
            )
        }
        AlgebraSpec::Su { p, q } => {
            let (g, a) = classical::to_algebra(&classical::unitary_type(p, q, 2, true))?;
            let n = p + q;
            (
                g,
                a,
                format!(
                    "complex {n}x{n} realified to {0}x{0} real, theta X = -X^T",
                    2 * n
                ),
            )
        }
        AlgebraSpec::Sp { p, q } => {
            let (g, a) = classical::to_algebra(&classical::unitary_type(p, q, 4, false))?;
            let n = p + q;
            (
                g,
                a,
                format!(
                    "quaternionic {n}x{n} realified to {0}x{0} real, theta X = -X^T",
                    4 * n
                ),
            )
        }
        AlgebraSpec::Split { ty, rank } => {
            let (g, a) = chevalley::split_algebra(ty, rank)?;
            (
                g,
                a,
                "Chevalley basis, theta(e_a) = -e_(-a), a = span of h_i".to_string(),
            )
        }
    };
    BuiltAlgebra::new(algebra, a, spec.to_string(), note, Some(*spec))
}

/// Builds the split form of the given Cartan type.
pub fn build_split_chevalley(ty: CartanType, rank: usize) -> Result<BuiltAlgebra> {
    if !ty.valid_rank(rank) {
        return Err(Error::UnsupportedType(format!("{}{rank}", ty.letter())));
    }
    build(&AlgebraSpec::split(ty, rank))
}

/// Parses a catalog name and builds it.
pub fn build_named(name: &str) -> Result<BuiltAlgebra> {
    build(&name.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_ranks() {
        for (name, dim, rank) in [
            ("sl3R", 8, 2),
            ("so(1,3)", 6, 1),
            ("su(1,2)", 8, 1),
            ("sp(1,2)", 21, 1),
            ("so(2,3)", 10, 2),
            ("split-G2", 14, 2),
            ("split-B2", 10, 2),
        ] {
            let b = build_named(name).unwrap();
            assert_eq!((b.algebra.dim(), b.real_rank()), (dim, rank), "{name}");
        }
    }

    #[test]
    fn cartan_dimensions() {
        for (name, k, p) in [("sl2R", 1, 2), ("so(1,3)", 3, 3), ("su(1,2)", 4, 4)] {
            let b = build_named(name).unwrap();
            let (kk, pp) = cartan_decompose(&b.algebra).unwrap();
            assert_eq!((kk.dim(), pp.dim()), (k, p), "{name}");
        }
    }

    #[test]
    fn json_round_trip_keeps_a() {
        let b = build_named("su(1,2)").unwrap();
        let j = b.to_json().unwrap();
        let back = BuiltAlgebra::from_json(
            &AlgebraJson::from_str(&j.to_string_pretty().unwrap()).unwrap(),
        )
        .unwrap();
        assert!(back.algebra.same_algebra(&b.algebra));
        assert!(back.a_basis.same_space(&b.a_basis));
        assert_eq!(back.spec, b.spec);
    }

    #[test]
    fn wrong_a_rejected() {
        let b = build_named("sl3R").unwrap();
        // a single diagonal element is abelian in p but not maximal
        let a = SubspaceBasis::span(8, vec![b.a_basis.vectors()[0].clone()]);
        let err =
            BuiltAlgebra::new(b.algebra.clone(), a, "x".into(), String::new(), None).unwrap_err();
        assert!(matches!(err, Error::BadCartanSubspace(_)));
    }
}
