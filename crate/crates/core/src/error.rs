use thiserror::Error;

/// Errors raised by game construction, decomposition and dynamics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition checked numerically did not hold; `residual` is the
    /// measured violation.
    #[error("precondition failed: {message} (residual {residual:e})")]
    Precondition { message: String, residual: f64 },

    #[error("bimatrix game is not symmetric: ||A - B^T||_F = {distance:e}")]
    NotSymmetric { distance: f64 },

    /// The integrator produced a state that left the simplex beyond tolerance.
    #[error("integration left the simplex at t = {time}: {message}")]
    Integration {
        message: String,
        time: f64,
        last_valid: Vec<f64>,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
