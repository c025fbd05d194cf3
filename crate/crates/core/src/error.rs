use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("point id {id} out of range (ambient size {ambient})")]
    InvalidPointId { id: usize, ambient: usize },

    #[error("source set must be nonempty")]
    EmptySourceSet,

    #[error("weighted point set must be nonempty")]
    EmptyPointSet,

    #[error("graph is disconnected: vertex {unreached} unreachable from vertex 0")]
    DisconnectedGraph { unreached: usize },

    #[error("invalid metric input: {0}")]
    InvalidMetric(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded: need {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("embedding verification failed after {retries} retries (best distortion {best_eff})")]
    EmbeddingFailed { retries: u32, best_eff: f64 },

    #[error("invalid planar embedding: {0}")]
    InvalidEmbedding(String),

    #[error("portal structures built with different epsilon ({a} vs {b})")]
    MismatchedEpsilon { a: f64, b: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
