//! Error types shared across the crate.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Parameter validation failed; the message names the violated constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An argument left the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration did not reach the requested accuracy.
    #[error("{what} did not converge after {iterations} iterations (best estimate {best:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        best: f64,
    },

    /// Quadrature refinement ran out of levels; carries the last estimate.
    #[error("quadrature did not converge (last estimate {estimate:e}, error estimate {err_est:e})")]
    QuadratureNoConvergence { estimate: f64, err_est: f64 },

    /// Simultaneous root iteration stagnated; carries the best iterate.
    #[error("root finding stagnated (max residual {residual:e} over {} roots)", roots.len())]
    RootStagnation {
        roots: Vec<Complex64>,
        residual: f64,
    },

    /// QR iteration failed to deflate an eigenvalue.
    #[error("QR iteration did not converge after {iterations} sweeps")]
    QrNoConvergence { iterations: usize },

    /// Two independent zero computations disagree beyond tolerance.
    #[error("zero oracles disagree by {max_diff:e} (root finder vs Hessenberg eigenvalues)")]
    OracleDisagreement {
        roots: Vec<f64>,
        eigenvalues: Vec<f64>,
        max_diff: f64,
    },

    /// A bracketing scan exhausted its range before finding enough sign changes.
    #[error("bracket search exhausted range (0, {scanned_to}) after finding {found} zeros")]
    BracketSearchExhausted { scanned_to: f64, found: usize },

    /// An identity that should hold (exactly or to stated tolerance) failed;
    /// the message carries the first witness.
    #[error("check failed: {0}")]
    CheckFailed(String),
}
