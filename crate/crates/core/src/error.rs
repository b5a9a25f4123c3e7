use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// `(rows, cols)` of a matrix, used in error messages.
pub type Shape = (usize, usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero-dimensional matrix ({rows}x{cols}) is not allowed")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("matrix data has {got} entries, expected {rows}x{cols}={expected}", expected = rows * cols)]
    DataLength {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: String },

    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: Shape,
        right: Shape,
    },

    #[error("{op}: expected a square matrix, got {shape:?}")]
    NotSquare { op: &'static str, shape: Shape },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds {allowed:e})")]
    NotHermitian { asymmetry: f64, allowed: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error(
        "matrix has a negative eigenvalue {value:e} below the clamping threshold {threshold:e}"
    )]
    NegativeEigenvalue { value: f64, threshold: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{what} needs degree >= {min}, polynomial has degree {degree}")]
    DegreeTooSmall {
        what: &'static str,
        degree: usize,
        min: usize,
    },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("leading coefficient is zero")]
    ZeroLeading,

    #[error(
        "root finder did not converge after {iterations} iterations (worst residual {residual:e})"
    )]
    RootsNoConvergence { iterations: usize, residual: f64 },

    #[error("inequality violated: {name}: {detail}")]
    BoundViolation { name: String, detail: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
