use thiserror::Error;

/// Error surface shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violation: {0}")]
    Precondition(String),

    /// An exhaustive sweep or realization would exceed its enumeration budget.
    #[error("enumeration budget of {budget} exceeded: at least {needed} items required")]
    ResourceLimit { budget: u64, needed: u64 },

    /// Two configuration points coincide where a strict configuration is required.
    #[error("degenerate configuration: points {i} and {j} are within {tol}")]
    DegenerateConfiguration { i: usize, j: usize, tol: f64 },

    #[error("sampling failed after {attempts} rejection attempts")]
    SamplingFailure { attempts: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
