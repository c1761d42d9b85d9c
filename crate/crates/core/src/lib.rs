//! Exact computations with real semisimple Lie algebras: restricted roots,
//! the Iwasawa `n`, H-type subalgebras and derivations of `n`.
//!
//! All arithmetic is over the rationals; nothing is ever rounded.

pub mod catalog;
pub mod dersolve;
pub mod error;
pub mod htype;
pub mod lie;
pub mod linalg;
pub mod roots;

pub use catalog::{build, build_named, AlgebraSpec, BuiltAlgebra, CartanType};
pub use dersolve::{ConstraintMode, DerivationSpace, Verdict};
pub use error::{Error, Result};
pub use htype::{GradedEndo, MetricTwoStep};
pub use lie::{AlgebraJson, InnerProduct, LieAlgebra, StructureConstants};
pub use linalg::{MatrixQ, Rational, SubspaceBasis, VecQ};
pub use roots::{decompose, RootDatum, RootedNilpotent};
