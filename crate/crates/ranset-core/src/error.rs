use alloc::string::String;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the calculus.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("frame must contain at least one outcome")]
    EmptyFrame,
    #[error("frame has {0} outcomes, dense power-set operations are capped at 24")]
    FrameTooLarge(usize),
    #[error("frame labels are not unique: {0:?}")]
    DuplicateLabel(String),
    #[error("label {0:?} does not belong to the frame")]
    UnknownLabel(String),
    #[error("mass {mass} assigned to subset {bits:#b} is out of range")]
    MassOutOfRange { bits: u32, mass: f64 },
    #[error("masses sum to {0}, further than 1e-9 from 1")]
    NormalizationError(f64),
    #[error("normalized mass function assigns {0} to the empty set")]
    MassOnEmptySet(f64),
    #[error("subset mask {bits:#b} does not fit a frame of {size} outcomes")]
    MaskOutOfRange { bits: u32, size: usize },
    #[error("operands are defined on different frames")]
    FrameMismatch,
    #[error("total conflict: combined evidence is contradictory")]
    TotalConflict,
    #[error("conditioning event has zero plausibility")]
    ZeroPlausibility,
    #[error("operation requires a normalized mass function")]
    NotNormalized,
    #[error("operation requires a binary frame")]
    NotBinaryFrame,
    #[error("frame is not a component of the product frame")]
    ComponentMismatch,
    #[error("invalid refining: {0}")]
    InvalidRefining(&'static str),
    #[error("invalid problem: {0}")]
    InvalidProblem(&'static str),
    #[error("instance too large: {0}")]
    Intractable(&'static str),
    #[error("solver failed to converge within the iteration budget")]
    NonConvergence,
    #[error("insufficient data: {0}")]
    InsufficientData(&'static str),
    #[error("degenerate instance: {0}")]
    Degenerate(&'static str),
    #[error("no hypothesis attains zero risk under the given distribution")]
    NotRealizable,
    #[error("no admissible column substitution exists for this column")]
    NoAdmissibleSubstitution,
    #[error("column has a nonnegative solution component; nothing to substitute")]
    NothingToSubstitute,
    #[error("singular linear system")]
    SingularSystem,
    #[error("domain error: {0}")]
    Domain(&'static str),
}
