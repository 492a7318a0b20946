//! Error types, one enum per layer.

use thiserror::Error;

use crate::rat::Rat;

/// Errors from the scalar kernel (polynomials, root isolation).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("empty interval: lower endpoint exceeds upper endpoint")]
    EmptyInterval,
}

/// Errors from the function-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different algebras")]
    DescriptorMismatch,
    #[error("invertibility is only meaningful in a unital algebra")]
    NonUnitalAlgebra,
    #[error("enclosure width must be positive, got {0}")]
    NonpositiveWidth(Rat),
    #[error("superlevel threshold must be positive, got {0}")]
    NonpositiveEpsilon(Rat),
    #[error("operand must be pointwise nonnegative")]
    NotPositive,
    #[error("invalid piecewise polynomial: {0}")]
    InvalidPiecewise(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Errors from the Hilbert-module layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("vectors belong to different module contexts")]
    ContextMismatch,
    #[error("index {0} is outside the system")]
    IndexOutOfSystem(u64),
    #[error("system is not orthogonal: inner product of vectors {0} and {1} is nonzero")]
    NotOrthogonal(u64, u64),
    #[error("system is not orthonormal: inner square of vector {0} is not the unit")]
    NotOrthonormal(u64),
    #[error("vector {0} is not norm-one")]
    SystemNotNormOne(u64),
    #[error("hypothesis violated: inner square of vector {0} exceeds 1 somewhere")]
    HypothesisViolated(u64),
    #[error("completeness witness must be a nonzero vector")]
    ZeroWitness,
    #[error("support geometry unbounded: witness overlaps infinitely many system vectors")]
    UnboundedOverlap,
    #[error("schedule must be strictly increasing and nonempty")]
    BadSchedule,
    #[error("index sets must satisfy F ⊆ G")]
    NotASubset,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from the example gallery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("unknown gallery id {0:?}")]
    UnknownId(String),
    #[error("bad parameters for {id}: {reason}")]
    BadParams { id: String, reason: String },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
