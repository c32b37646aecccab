use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial is not numerical: coefficient {0} is not an integer")]
    NotNumerical(String),
    #[error("interpolation window too small: need {needed} consecutive points, got {got}")]
    WindowTooSmall { needed: usize, got: usize },
    #[error("interpolation points are not consecutive at r = {0}")]
    NonConsecutive(i64),
    #[error("values are not eventually polynomial: point r = {r} disagrees with the fitted polynomial")]
    NotEventuallyPolynomial { r: i64 },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeExceedsCap { degree: i64, cap: usize },
    #[error("empty index set has no maximal elements")]
    EmptySet,
    #[error("block index {block} out of range (partition has {blocks} blocks)")]
    BlockOutOfRange { block: usize, blocks: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid ground field: {0}")]
    InvalidField(String),
    #[error("closed-form counting is not available for inversive signatures")]
    InversiveUnsupported,
    #[error("intermediate field is not asserted to be closed under the basic operators")]
    NotSigmaDeltaClosed,
    #[error("generator {0} is not a monomial")]
    NonMonomialGenerator(usize),
    #[error("ambient extension is not free")]
    AmbientNotFree,
    #[error("change of generators is not invertible: {0}")]
    TransitionNotInvertible(String),
    #[error("intermediate fields do not correspond under the change of generators: {0}")]
    FieldMismatch(String),
    #[error("chain containment violated at link {link}")]
    ContainmentViolated { link: usize },
    #[error("extension presentation is not free")]
    NotFree,
    #[error("expected a single generator, found {0}")]
    NotSingleGenerator(usize),
    #[error("oracle did not stabilize within {cap} closure sweeps")]
    NotStabilized { cap: usize },
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("component index {index} out of range for rank {rank}")]
    ComponentOutOfRange { index: usize, rank: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
