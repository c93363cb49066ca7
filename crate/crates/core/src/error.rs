use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A size parameter exceeds the guard of the requested operation.
    #[error("{what} = {value} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("anchor {anchor:?} lies outside Z_{limit}^{dim}")]
    AnchorOutOfRange {
        anchor: Vec<i64>,
        dim: usize,
        limit: i64,
    },

    #[error("unsupported dimension {0}")]
    Dimension(usize),

    #[error("method `{method}` is not available for {set}")]
    UnsupportedMethod {
        method: &'static str,
        set: &'static str,
    },

    #[error("continued fraction terminates after {available} terms, {requested} requested")]
    DepthUnreachable { requested: usize, available: usize },

    #[error("factorization of {target} did not finish within the budget")]
    FactorizationBudget { target: String },

    #[error("precision: {0}")]
    Precision(String),

    #[error("invalid gamma preset `{0}`")]
    InvalidPreset(String),

    /// No approximation `|q² − p²/γ²| < 1/N²` among the scanned convergents.
    /// `best_defect` brackets the smallest `|q² − p²/γ²|` that was seen.
    #[error("no (p, q) witness for N = {n} within depth {depth}; best defect in [{best_defect_lo:.6e}, {best_defect_hi:.6e}]")]
    WitnessNotFound {
        n: u32,
        depth: usize,
        best_defect_lo: f64,
        best_defect_hi: f64,
    },

    #[error("128-bit counter overflow")]
    Overflow,
}

impl Error {
    /// Budget errors are the recoverable "too big for this desk" family.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded { .. } | Error::FactorizationBudget { .. } | Error::Overflow
        )
    }

    pub(crate) fn limit(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::LimitExceeded {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }
}
