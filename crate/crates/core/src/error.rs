use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: vertex id {id} is below base {base}")]
    VertexBelowBase { line: usize, id: u64, base: u64 },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has dead ends; add self-loops first")]
    NotNormalized,

    #[error("rank vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("batch generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// True for errors caused by a caller breaking an operation's
    /// preconditions, as opposed to bad input data or I/O.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::Contract(_)
                | Error::LengthMismatch { .. }
                | Error::VertexOutOfRange { .. }
                | Error::NotNormalized
                | Error::Config(_)
        )
    }
}
