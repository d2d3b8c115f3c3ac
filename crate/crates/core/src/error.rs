use thiserror::Error;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A mathematical precondition was violated (torsion point, bad parameter, ...).
    Domain,
    /// A configured size budget would be exceeded.
    Budget,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("T = {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("singular Weierstrass equation (discriminant is zero)")]
    Singular,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("point is torsion of order {0}")]
    Torsion(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no non-torsion point found for T = {t} within search bound {bound}")]
    NoPointFound { t: u64, bound: u64 },

    #[error("inexact division while generating term {index}")]
    InexactDivision { index: usize },

    #[error("term {index} needs about {digits} decimal digits, over the digit budget of {budget}")]
    DigitBudget {
        index: u64,
        digits: u64,
        budget: u64,
    },

    #[error("certification needs {needed} terms, over the sequence budget of {budget}")]
    SequenceBudget { needed: u64, budget: u64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DigitBudget { .. } | Error::SequenceBudget { .. } => ErrorKind::Budget,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
