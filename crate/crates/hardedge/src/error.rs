use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Bessel order {0}: must exceed -1")]
    InvalidOrder(f64),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("degenerate interval [{a}, {b}]")]
    DegenerateInterval { a: f64, b: f64 },
    #[error("non-finite kernel value at ({x}, {y})")]
    Evaluation { x: f64, y: f64 },
    #[error("resolution error: estimated error {estimate:.3e} exceeds {tolerance:.3e}")]
    Resolution { estimate: f64, tolerance: f64 },
    #[error("symbol is not in the admissible space: {0}")]
    NotInSpace(String),
    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),
    #[error("axis too short: wrap-around error {0:.3e}")]
    AxisTooShort(f64),
    #[error("grid mismatch between operators")]
    GridMismatch,
    #[error("singular matrix")]
    Singular,
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
