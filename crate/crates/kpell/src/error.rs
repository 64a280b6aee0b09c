use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} needs {needed} vertices, budget is {budget} (raise KPELL_BUDGET or --budget)")]
    BudgetExceeded {
        what: String,
        needed: String,
        budget: u64,
    },

    #[error("{family} is defined for {requirement}, got n={n}, k={k}")]
    ParityMismatch {
        family: &'static str,
        requirement: &'static str,
        n: usize,
        k: u8,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("`{0}` is not a valid word for this alphabet")]
    InvalidWord(String),

    #[error("word `{0}` is not a vertex of this graph")]
    WordNotInGraph(String),

    #[error("series coefficient {index} is not an integer")]
    NonIntegralCoefficient { index: usize },

    #[error("power series denominator has zero constant term")]
    ZeroConstantTerm,

    #[error("graph is disconnected: vertex {0} unreachable")]
    Disconnected(u32),

    #[error("decomposition needs n >= 2, got n={0}")]
    DecompositionTooShort(usize),

    #[error("hamiltonian path construction failed: {0}")]
    PathConstruction(String),

    #[error("operation only defined for {expected}, graph has {found}")]
    WrongFamily {
        expected: &'static str,
        found: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
