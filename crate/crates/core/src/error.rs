use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure classes; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad arguments or inputs.
    Input,
    /// Numerical trouble: drift, condition loss, disagreement between routes.
    Numeric,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("ball of predicted size {predicted} exceeds cap {cap}")]
    CapExceeded { predicted: u128, cap: usize },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("{0} needs an irrational value; not available in exact mode")]
    IrrationalRequired(&'static str),
    #[error("value table too short: need {needed} entries, got {got}")]
    InsufficientDepth { needed: usize, got: usize },
    #[error("radius {radius} too small: supports need {needed}")]
    InsufficientRadius { radius: usize, needed: usize },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("synthetic division of 1 - P_{n} by 1 - s left remainder {remainder}")]
    NonzeroRemainder { n: usize, remainder: f64 },
    #[error("triangular solve amplified rounding by {amplification:.3e} (limit {limit:.0e})")]
    ConditionLoss { amplification: f64, limit: f64 },
    #[error("moment matrix not positive definite at order {order}; use fewer atoms")]
    SingularMoments { order: usize },
    #[error("convolution result is not radial on length {length}")]
    NotRadial { length: usize },
    #[error("CND kernel form and projected form disagree: {kernel:e} vs {projected:e}")]
    InternalDisagreement { kernel: f64, projected: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

impl Error {
    pub fn bad_input(msg: impl Into<String>) -> Self {
        Error::BadInput(msg.into())
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BadInput(_)
            | Error::CapExceeded { .. }
            | Error::Overflow(_)
            | Error::IrrationalRequired(_)
            | Error::InsufficientDepth { .. }
            | Error::InsufficientRadius { .. }
            | Error::Schema { .. } => ErrorClass::Input,
            Error::NonzeroRemainder { .. }
            | Error::ConditionLoss { .. }
            | Error::SingularMoments { .. }
            | Error::NotRadial { .. }
            | Error::InternalDisagreement { .. }
            | Error::NoConvergence => ErrorClass::Numeric,
        }
    }
}
