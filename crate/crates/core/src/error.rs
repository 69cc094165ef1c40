use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The operation is undefined on the zero element (e.g. the valuation).
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("operands belong to different models")]
    ModelMismatch,
    #[error("intersection pairing is singular")]
    SingularPairing,
    #[error("element is not invertible above t-floor {floor}: {reason}")]
    NotInvertibleAtFloor { floor: String, reason: String },
    #[error("invalid circle action: {0}")]
    InvalidAction(String),
    #[error("correction {index} has omega {omega}, which must be strictly positive")]
    CorrectionOrderViolation { index: usize, omega: String },
    #[error("weight {weight} at position {index} is positive; weights at the maximum must be <= 0")]
    PositiveWeightAtMax { index: usize, weight: i64 },
    #[error("expected {expected} line-bundle classes, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unsupported maximal fixed set: {0}")]
    UnsupportedFmax(String),
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}
