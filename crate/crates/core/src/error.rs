use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("empty identifier in {what}")]
    EmptyId { what: &'static str },

    #[error("duplicate vertex id \"{0}\"")]
    DuplicateVertex(String),

    #[error("duplicate edge id \"{0}\"")]
    DuplicateEdge(String),

    #[error("edge \"{edge}\" references undeclared vertex \"{vertex}\"")]
    DanglingEndpoint { edge: String, vertex: String },

    #[error("unknown vertex \"{0}\"")]
    UnknownVertex(String),

    #[error("unknown edge \"{0}\"")]
    UnknownEdge(String),

    #[error("malformed literal \"{literal}\": {reason}")]
    Literal { literal: String, reason: String },

    #[error("paths are not composable: source {source_vertex} != range {range_vertex}")]
    NotComposable {
        source_vertex: String,
        range_vertex: String,
    },

    #[error("path is not a prefix of the given path")]
    NotPrefix,

    #[error("path does not belong to this graph")]
    ForeignPath,

    #[error("monomial paths have different sources")]
    SourceMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid rational \"{0}\"")]
    Rational(String),

    #[error("missing value for vertex \"{0}\"")]
    MissingVertex(String),

    #[error("negative value at vertex \"{0}\"")]
    NegativeValue(String),

    #[error("invalid measure: {0}")]
    Measure(String),

    #[error("invalid tag: {0}")]
    Tag(String),

    #[error("tuple is not admissible: the cylinder combination takes a negative value")]
    NotAdmissible,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn literal(literal: &str, reason: impl Into<String>) -> Self {
        Error::Literal {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
