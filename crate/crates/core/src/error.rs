use thiserror::Error;

use crate::linalg::ComplexMatrix;

/// Errors raised anywhere in the numerical core.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is singular (pivot magnitude {pivot:e} below floor)")]
    SingularMatrix { pivot: f64 },

    #[error("matrix is ill-conditioned (condition estimate {estimate:e} exceeds cap {cap:e})")]
    IllConditioned { estimate: f64, cap: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error(
        "adaptive quadrature did not reach tolerance {tol:e} within {nodes_used} nodes \
         (last difference {error_estimate:e})"
    )]
    QuadratureNoConvergence {
        tol: f64,
        nodes_used: usize,
        error_estimate: f64,
        /// Last computed value, widened to `f64`.
        last: Box<ComplexMatrix<f64>>,
    },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eig:e})")]
    NotPositiveDefinite { min_eig: f64 },

    #[error("matrix is not accretive (smallest eigenvalue of real part {min_eig:e}, threshold {threshold:e})")]
    NotAccretive { min_eig: f64, threshold: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("invalid node count {0} (must lie in 1..=4096)")]
    InvalidNodeCount(usize),

    #[error("invalid Jacobi parameters alpha={alpha}, beta={beta} (both must exceed -1)")]
    InvalidParameters { alpha: f64, beta: f64 },

    #[error("weight {0} must lie in the open interval (0, 1)")]
    InvalidWeight(f64),

    #[error("scalar {0} must be strictly positive")]
    InvalidScalar(f64),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("integrand failed at node t={node}: {source}")]
    EvaluationFailure {
        node: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid ensemble specification: {0}")]
    InvalidSpec(String),

    #[error("{property}: trial with seed {trial_seed} failed: {source}")]
    TrialFailed {
        property: String,
        trial_seed: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for any flavour of iteration or quadrature non-convergence.
    pub fn is_no_convergence(&self) -> bool {
        match self {
            Error::NoConvergence { .. } | Error::QuadratureNoConvergence { .. } => true,
            Error::EvaluationFailure { source, .. } | Error::TrialFailed { source, .. } => source.is_no_convergence(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
