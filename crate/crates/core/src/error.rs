use thiserror::Error;

/// Errors raised by the exact-arithmetic Lie machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(
        "matrix is not diagonalizable over the rationals ({found} of {size} dimensions split)"
    )]
    NotDiagonalizableOverQ { found: usize, size: usize },
    #[error("matrices {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("eigenvalue search gave up: {0}")]
    EigenSearch(String),

    #[error("structure constants violate antisymmetry at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("theta is not involutive")]
    ThetaNotInvolutive,
    #[error("theta is not an automorphism (fails on basis pair ({0}, {1}))")]
    ThetaNotAutomorphism(usize, usize),
    #[error("normalisation constant must be positive, got {0}")]
    NonPositiveC(String),
    #[error("form is not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("subspace is not closed: {0}")]
    NotClosed(String),

    #[error("unsupported algebra family: {0}")]
    UnsupportedFamily(String),
    #[error("rank or parameters out of range: {0}")]
    RankOutOfRange(String),
    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),
    #[error("designated abelian subspace is invalid: {0}")]
    BadCartanSubspace(String),

    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("root system is decomposable")]
    DecomposableSystem,
    #[error("algebra is not simple")]
    NotSimple,
    #[error("root data inconsistent: {0}")]
    RootData(String),

    #[error("vectors are not orthogonal")]
    NotOrthogonal,
    #[error("algebra is not of H-type: {0}")]
    NotHType(String),
    #[error("endomorphism is not a derivation: {0}")]
    NotADerivation(String),
    #[error("endomorphism is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("transpose of a derivation is not a derivation: {0}")]
    TransposeNotDerivation(String),
    #[error("E-identity fails for roots ({0}, {1})")]
    EIdentityFails(usize, usize),
    #[error("extension to the null root space is inconsistent: {0}")]
    InconsistentExtension(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
