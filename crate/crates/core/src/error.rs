use thiserror::Error;

use crate::series::CountSeries;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown class {0}")]
    InvalidClass(String),

    #[error("n = {n} exceeds the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("series has zero constant term and is not invertible")]
    NonUnit,

    #[error("inner series of a composition must have zero constant term")]
    CompositionDomain,

    #[error("denominator vanishes at the origin")]
    PoleAtOrigin,

    /// The enumeration ran out of budget; `completed` holds the longest
    /// prefix that was finished.
    #[error("resource budget exceeded after {} terms: {reason}", completed.len())]
    BudgetExceeded {
        completed: Box<CountSeries>,
        reason: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("root polishing did not converge (branch {branch})")]
    NonConvergence { branch: String },

    #[error("no printed differential equation for {0}")]
    NoKnownOde(String),

    #[error("no known functional equation for {0}")]
    NoKnownEquation(String),

    #[error("series recurrence is singular at index {index}: {detail}")]
    SingularRecurrence { index: usize, detail: String },

    #[error("extrapolation did not stabilise: {0}")]
    UnstableExtrapolation(String),

    #[error("no physical singularity found: {0}")]
    NoPhysicalSingularity(String),

    #[error("not enough terms: need {needed}, have {available}")]
    InsufficientTerms { needed: usize, available: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
