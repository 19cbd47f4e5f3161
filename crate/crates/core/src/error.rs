use thiserror::Error;

/// Errors surfaced by the library.
///
/// The variants split into input problems, desk-scale infeasibility and
/// internal invariant violations; [`Error::class`] exposes that split.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse token `{token}` at byte {position}")]
    Parse { token: String, position: usize },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("operation not supported by the {backend} backend")]
    Unsupported { backend: &'static str },

    #[error("word represents the identity, but a non-trivial element is required")]
    TrivialInput,

    #[error("element has finite order {order}; an infinite-order element is required")]
    Torsion { order: u64 },

    #[error("no infinite-order element among products of the generators up to length {search_len}")]
    NoInfiniteOrder { search_len: usize },

    #[error("ball of radius {radius} exceeds the vertex cap of {cap}")]
    BallOverflow { radius: usize, cap: usize },

    #[error("bound {name} is infeasible: {detail}")]
    Infeasible { name: &'static str, detail: String },

    #[error("context validation failed: C-local geodesic `{path}` violates the quasigeodesic inequality")]
    Validation { path: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Infeasible,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BallOverflow { .. } | Error::Infeasible { .. } => ErrorClass::Infeasible,
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
