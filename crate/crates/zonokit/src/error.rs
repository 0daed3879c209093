use thiserror::Error;

/// Errors produced by set construction and the difference pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Dimension 0 is rejected everywhere; facet enumeration additionally
    /// requires n >= 2 (the 1-D case is handled by interval arithmetic).
    #[error("unsupported dimension {0}")]
    InvalidDimension(usize),

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// The generator matrix does not span enough directions for the
    /// requested conversion (rank below the required value).
    #[error("degenerate zonotope: {0}")]
    DegenerateZonotope(&'static str),

    /// Signalled instead of panicking when the LP iteration cap is hit or a
    /// solve cannot be certified.
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),

    #[error("too many generators: {count} exceeds cap {cap}")]
    TooManyGenerators { count: usize, cap: usize },

    #[error("facet record references generator {index}, but only {generator_count} exist")]
    InconsistentEnumeration { index: usize, generator_count: usize },

    #[error("support is unbounded in the queried direction")]
    Unbounded,

    #[error("operation requires a nonempty polytope")]
    EmptySet,

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
