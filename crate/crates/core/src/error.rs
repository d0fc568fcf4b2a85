use thiserror::Error;

/// Errors produced by the shapenerve library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,

    #[error("ring has {count} vertices, at least 3 are required")]
    TooFewVertices { count: usize },

    #[error("polygon is invalid: {reason}")]
    PolygonInvalid { reason: String },

    #[error("cannot triangulate: {reason}")]
    TriangulationImpossible { reason: String },

    #[error("complex is invalid: {reason}")]
    ComplexInvalid { reason: String },

    #[error("vertex {vertex} has no incident triangle")]
    IsolatedVertex { vertex: usize },

    #[error("vertex {vertex} does not exist")]
    UnknownVertex { vertex: usize },

    #[error("operands belong to different host complexes")]
    HostMismatch,

    #[error("cover is empty")]
    EmptyCover,

    #[error("schema error at {context}: {message}")]
    Schema { context: String, message: String },

    #[error("cannot parse number {value:?} at {context}")]
    NumberParse { value: String, context: String },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable code, used by the CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateTriangle => "DEGENERATE_TRIANGLE",
            Error::TooFewVertices { .. } => "TOO_FEW_VERTICES",
            Error::PolygonInvalid { .. } => "POLYGON_INVALID",
            Error::TriangulationImpossible { .. } => "TRIANGULATION_IMPOSSIBLE",
            Error::ComplexInvalid { .. } => "COMPLEX_INVALID",
            Error::IsolatedVertex { .. } => "ISOLATED_VERTEX",
            Error::UnknownVertex { .. } => "UNKNOWN_VERTEX",
            Error::HostMismatch => "HOST_MISMATCH",
            Error::EmptyCover => "EMPTY_COVER",
            Error::Schema { .. } => "SCHEMA_ERROR",
            Error::NumberParse { .. } => "NUMBER_PARSE_ERROR",
            Error::InvalidConfig { .. } => "INVALID_CONFIG",
            Error::Io { .. } => "IO_ERROR",
        }
    }

    pub(crate) fn polygon(reason: impl Into<String>) -> Self {
        Error::PolygonInvalid { reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
