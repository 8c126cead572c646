use thiserror::Error;

/// Errors raised by the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation too close to the threshold where `artanh(alpha*xi)` diverges.
    #[error("pole at the threshold E = -Sigma = {threshold} (requested {at})")]
    Pole { threshold: f64, at: f64 },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("normalization N_{spin}^-2 = {value} is not positive")]
    NonPositiveNormalization { spin: char, value: f64 },

    #[error("regime error: {0}")]
    Regime(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The generic second-order quotient has a vanishing denominator.
    #[error("degenerate denominator {denominator:e} in second-order correction")]
    DegenerateDenominator { denominator: f64 },

    #[error("no solution: {0}")]
    NoSolution(String),

    /// The best estimate is attached so callers can still report it.
    #[error("tolerance {requested:e} not reached (estimate {estimate_re:e}{estimate_im:+e}i, error {error:e})")]
    NotConverged {
        requested: f64,
        estimate_re: f64,
        estimate_im: f64,
        error: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
