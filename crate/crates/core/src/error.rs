use thiserror::Error;

/// Errors raised by shift computations. The variant name is part of every
/// rendered message so command-line users can tell failures apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("EmptyShift: {0}")]
    EmptyShift(String),
    #[error("BudgetExceeded: {what} exceeds cap {cap}")]
    BudgetExceeded { what: String, cap: usize },
    #[error("StateBlowup: more than {cap} states in {what}")]
    StateBlowup { what: String, cap: usize },
    #[error("AlphabetBlowup: {size} choice symbols exceed cap {cap}")]
    AlphabetBlowup { size: usize, cap: usize },
    #[error("NotRightResolving: vertex {0} has two out-edges with the same label")]
    NotRightResolving(String),
    #[error("NotIrreducible: {0}")]
    NotIrreducible(String),
    #[error("NoEdges: matrix has no non-zero entry")]
    NoEdges,
    #[error("UndefinedWindow: window {0} is outside the block map domain")]
    UndefinedWindow(String),
    #[error("ZeroIndependenceEntropy: no multi-member choice symbol survives trimming")]
    ZeroIndependenceEntropy,
    #[error("ZeroEntropy: the shift has zero topological entropy")]
    ZeroEntropy,
    #[error("Infeasible: {0}")]
    Infeasible(String),
    #[error("OverlapUnverified: {0}")]
    OverlapUnverified(String),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("Internal: {0}")]
    Internal(String),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, cap: usize) -> Self {
        Error::BudgetExceeded { what: what.into(), cap }
    }

    pub(crate) fn blowup(what: impl Into<String>, cap: usize) -> Self {
        Error::StateBlowup { what: what.into(), cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
