//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomogError {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("incompatible oscillatory sampling: {0}")]
    IncompatibleResolution(String),

    #[error("invalid multiindex operation: {0}")]
    MultiIndex(String),

    #[error("invalid smoothing kernel: {0}")]
    InvalidKernel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("coercivity check failed: estimated ratio {ratio:.6e} below declared lambda0 {lambda0:.6e}")]
    EllipticityFailed { ratio: f64, lambda0: f64 },

    #[error(
        "solver did not converge after {iterations} iterations \
         (preconditioned relative residual {residual:.3e})"
    )]
    SolverDiverged {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error(
        "divergence-free precondition violated: relative residual {residual:.3e} \
         exceeds limit {limit:.1e}"
    )]
    NotDivergenceFree { residual: f64, limit: f64 },

    #[error("non-finite value produced at stage '{stage}'")]
    NonFinite { stage: String },

    #[error("rate fit needs at least {required} positive points, got {got}")]
    RateFit { required: usize, got: usize },

    #[error("stage '{stage}'{}: {source}", eps.map(|e| format!(" (eps = {e})")).unwrap_or_default())]
    Stage {
        stage: String,
        eps: Option<f64>,
        #[source]
        source: Box<HomogError>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid bundle: {0}")]
    Bundle(String),
}

impl HomogError {
    /// Wraps an error with the pipeline stage it occurred in.
    pub fn at_stage(self, stage: &str, eps: Option<f64>) -> Self {
        HomogError::Stage {
            stage: stage.to_string(),
            eps,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, HomogError>;
