use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("point lies outside the domain (gauge {gauge:.6})")]
    OutsideDomain { gauge: f64 },

    #[error("point too close to the boundary for a series model (gauge {gauge:.6} > {limit})")]
    NearBoundary { gauge: f64, limit: f64 },

    #[error("quadrature for α = {alpha:?} did not reach tolerance with {nodes} nodes per axis")]
    NonConvergent { alpha: Vec<u32>, nodes: usize },

    #[error("moment for α = {alpha:?} underflows ({value:e})")]
    Underflow { alpha: Vec<u32>, value: f64 },

    #[error("moment for α = {alpha:?} is not a positive finite number ({value})")]
    BadMoment { alpha: Vec<u32>, value: f64 },

    #[error("truncation did not converge up to degree {cap} (last relative change {change:e})")]
    TruncationInsufficient { cap: u32, change: f64 },

    #[error("metric matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("zero tangent vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("constraint Gram matrix is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
