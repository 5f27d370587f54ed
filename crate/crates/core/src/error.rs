use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("pole at substitution: {0}")]
    PoleAtSubstitution(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("stabilization mismatch: {0}")]
    StabilizationMismatch(String),
    #[error("straightening did not terminate for {sequence:?}: {reason}")]
    NonTermination { sequence: Vec<i64>, reason: String },
    #[error("basis box too small: {0}")]
    BoxTooSmall(String),
    #[error("basis elements are not independent: {0}")]
    IndependenceFailure(String),
    #[error("non-integer expansion coefficient: {0}")]
    IntegralityFailure(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("leading-term violation: {0}")]
    LeadingTermViolation(String),
}

impl Error {
    /// Stable name of the variant, printed by the CLI on failure.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::PoleAtSubstitution(_) => "PoleAtSubstitution",
            Error::SizeLimit(_) => "SizeLimit",
            Error::StabilizationMismatch(_) => "StabilizationMismatch",
            Error::NonTermination { .. } => "NonTermination",
            Error::BoxTooSmall(_) => "BoxTooSmall",
            Error::IndependenceFailure(_) => "IndependenceFailure",
            Error::IntegralityFailure(_) => "IntegralityFailure",
            Error::InternalConsistency(_) => "InternalConsistency",
            Error::LeadingTermViolation(_) => "LeadingTermViolation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
