use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypergeometric series for 1F1({a}, {b}, {x}) cancelled {digits:.1} digits (budget {budget})")]
    Accuracy {
        a: f64,
        b: f64,
        x: f64,
        digits: f64,
        budget: f64,
    },

    #[error("bracket search exhausted: {0}")]
    BracketExhausted(String),

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("normalization failed: {0}")]
    Normalization(String),

    #[error("momentum tail mass {tail:.3e} exceeds tolerance {tolerance:.1e} at p_max = {p_max}")]
    TailTruncation {
        tail: f64,
        tolerance: f64,
        p_max: f64,
    },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("uncertainty bound violated: {0}")]
    BoundViolation(String),

    #[error("Fisher information routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidState(_) => 2,
            Error::Domain(_)
            | Error::Accuracy { .. }
            | Error::BracketExhausted(_)
            | Error::NonConvergence(_)
            | Error::Normalization(_)
            | Error::TailTruncation { .. } => 3,
            Error::Consistency(_) | Error::BoundViolation(_) | Error::RouteDisagreement(_) => 4,
            Error::Io(_) => 5,
        }
    }
}
