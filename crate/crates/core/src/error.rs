use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("limit does not exist: jet has valuation {valuation}")]
    Pole { valuation: i32 },

    #[error("derivative of order {n} requested from a jet of order {order}")]
    Order { n: usize, order: usize },

    #[error("index out of range: {0}")]
    Range(String),

    #[error("singular change of basis: |[1+i][eps]| = {0:e} is below the zero threshold")]
    Singular(f64),

    #[error("ribbon structure used before calibration")]
    Calibration,

    #[error("calibration failed: {0}")]
    CalibrationFailed(String),

    #[error("module {0} is not projective")]
    NotProjective(String),

    #[error("endomorphism is not scalar on a simple summand (residual {0:e})")]
    NonScalar(f64),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("strand type mismatch in slice {slice} (byte {offset}): {message}")]
    TypeMismatch {
        slice: usize,
        offset: usize,
        message: String,
    },

    #[error("map does not commute with the action (residual {0:e})")]
    NotEndomorphism(f64),

    #[error("endomorphism space has dimension {0}, expected 2")]
    Basis(usize),

    #[error("cross-check failed: {what} ({lhs} vs {rhs})")]
    CrossCheck { what: String, lhs: String, rhs: String },

    #[error("mismatch: {what}: computed {computed}, expected {expected}")]
    Mismatch {
        what: String,
        computed: String,
        expected: String,
    },

    #[error("epsilon = {0} lies on a regime boundary")]
    Boundary(String),

    #[error("label outside the domain of the dictionary: {0}")]
    Domain(String),

    #[error("regime precondition violated: {0}")]
    Regime(String),

    #[error("operation requires a semisimple weight module: {0}")]
    NotWeightModule(String),

    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
