use thiserror::Error;

/// Everything that can go wrong while sampling or post-processing.
///
/// Variants split into two broad families: *usage* problems (bad option
/// strings, invalid dimensions or intervals, I/O) and *numerical* problems
/// (invariant violations, degenerate inputs, failed convergence). The CLI
/// maps the families to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported rng '{given}': supported options are mt, gnu")]
    UnsupportedRng { given: String },

    #[error("rng 'netlib' is recognized but not built in; choose one of: mt, gnu")]
    NetlibNotBuilt,

    #[error("unsupported {object} method '{given}': options are {options}")]
    UnsupportedMethod {
        object: &'static str,
        given: String,
        options: &'static str,
    },

    #[error("unsupported object '{given}': options are rn, rpv, ru, rsv, rdm")]
    UnsupportedObject { given: String },

    #[error("invalid interval: lower bound {a} exceeds upper bound {b}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("draw {value} outside [0, 1]")]
    DrawOutOfRange { value: f64 },

    #[error("draw {value} is negative; nonnegative draws required")]
    NegativeDraw { value: f64 },

    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not Hermitian: max |a - a^H| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary: max |u^H u - 1| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("state vector is not normalized: |sum|c|^2 - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("probability component {index} is negative: {value:e}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities do not sum to one: |sum - 1| = {deviation:e}")]
    ProbabilitySum { deviation: f64 },

    #[error("trace deviates from one by {deviation:e}")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that signal a broken computation rather than a bad
    /// request; the CLI reports these with a dedicated exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DrawOutOfRange { .. }
                | Error::NegativeDraw { .. }
                | Error::DegenerateInput(..)
                | Error::NotSquare { .. }
                | Error::ShapeMismatch(..)
                | Error::NotHermitian { .. }
                | Error::NotUnitary { .. }
                | Error::NotNormalized { .. }
                | Error::NegativeProbability { .. }
                | Error::ProbabilitySum { .. }
                | Error::TraceNotOne { .. }
                | Error::NotPositiveSemidefinite { .. }
                | Error::NoConvergence { .. }
                | Error::NumericalFailure(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
