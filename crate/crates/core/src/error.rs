use thiserror::Error;

/// Errors produced by graph construction and the analyses built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: vertex 0 reaches {reached} of {order} vertices")]
    Disconnected { reached: usize, order: usize },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("unknown vertex key {0}")]
    UnknownVertex(String),

    #[error("malformed neighbor oracle: {from} lists {to} as a neighbor but not conversely")]
    MalformedOracle { from: String, to: String },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("usage error: {0}")]
    Usage(String),

    /// Finite graph that is not self-centered: the coefficients are not well-defined.
    #[error(
        "graph is not self-centered: vertex {witness} has eccentricity {eccentricity} \
         but the diameter is {diameter}, so the convolution coefficients are not well-defined"
    )]
    NotSelfCentered {
        witness: usize,
        eccentricity: usize,
        diameter: usize,
    },

    #[error("level {level} is out of range (eccentricity of the base point is {eccentricity})")]
    LevelOutOfRange { level: usize, eccentricity: usize },

    #[error(
        "table is too shallow: need rows up to index sum {required}, table certifies {available}"
    )]
    InsufficientDepth { required: usize, available: usize },

    #[error("not an association scheme: {0}")]
    NotAScheme(String),

    #[error("exhaustive search bound exceeded: order {order} > {bound}")]
    SearchBound { order: usize, bound: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
