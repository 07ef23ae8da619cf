use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("enumeration budget exceeded: {needed} bits requested, limit {limit}")]
    BudgetExceeded { needed: usize, limit: usize },

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("Cartan split failed: {0}")]
    SplitFailure(String),

    #[error("torus basis is not toral: root spaces cover {covered} of {dim} dimensions")]
    NonToralBasis { covered: usize, dim: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a restricted Lie algebra: {0}")]
    NonRestricted(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),

    #[error("line {line}: nonzero diagonal bracket [b{index}, b{index}]")]
    AlternatingViolation { line: usize, index: usize },

    #[error("line {line}: bracket entry ({i}, {j}) must have i < j")]
    NonSymmetricEntry { line: usize, i: usize, j: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("fixture `{name}` failed self-verification: {detail}")]
    FixtureUnverified { name: String, detail: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
