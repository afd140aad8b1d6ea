use thiserror::Error;

/// Errors raised by the group engine and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("handle is not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("subgroup handles belong to different ambient groups")]
    MixedAmbient,

    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: u128, bound: u128 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("the trivial group has no minimal normal subgroups")]
    TrivialGroup,

    #[error("simple factor of order {0} cannot be identified by its order")]
    UnidentifiableFactor(u64),

    #[error("class residual is not unique: {0} minimal normal subgroups have quotients in the class")]
    NonUniqueMinimal(usize),

    #[error("subgroup set level mismatch: expected {expected}, found {found}")]
    LevelMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("unsupported group spec `{0}`")]
    UnsupportedSpec(String),

    #[error("corpus error: {0}")]
    Corpus(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
