use thiserror::Error;

/// Unified error type for all exact-arithmetic operations.
///
/// Variants are grouped roughly by subsystem; `ResourceLimit` is the only
/// variant that signals an aborted (rather than invalid) computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("element is not a square")]
    NotSquare,
    #[error("{0} is not prime or not supported as a modulus")]
    BadModulus(String),

    #[error("matrix is not square")]
    NotSquareMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("rows do not form a basis of their span")]
    DependentRows,

    #[error("variable sets do not match")]
    VarSetMismatch,
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("label collision: {0}")]
    LabelCollision(String),
    #[error("missing assignment for variable {0}")]
    MissingAssignment(String),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded ({0} pair reductions)")]
    ResourceLimit(usize),
    #[error("exact division failed")]
    ExactDivisionFailure,

    #[error("ground set too large: {0} elements (limit {1})")]
    TooLarge(usize, usize),
    #[error("matroid is disconnected")]
    Disconnected,
    #[error("set is not a basis")]
    NotABasis,
    #[error("bases list is empty")]
    EmptyBases,
    #[error("bases violate the exchange property")]
    ExchangeFailure,
    #[error("set is not a handle")]
    NotAHandle,
    #[error("set is not an exact 2-separation")]
    NotA2Separation,

    #[error("covector is zero")]
    ZeroCovector,
    #[error("momentum is invalid: {0}")]
    InvalidMomentum(String),
    #[error("realization is not in wheel/whirl shape")]
    NotAWheelRealization,
    #[error("genericity not reached after {0} attempts")]
    GenericityFailure(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
