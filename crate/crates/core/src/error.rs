use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be finite, got {0}")]
    NonFinite(f64),

    #[error("unknown link `{0}` (expected one of: logistic, normal, gumbel-max, gumbel-min)")]
    UnknownLink(String),

    #[error("UnorderedThresholds: threshold {index} ({left}) is not below threshold {next} ({right})", next = index + 1)]
    UnorderedThresholds { index: usize, left: f64, right: f64 },

    #[error("ArityMismatch: {what} expects {expected} values, got {found}")]
    ArityMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("trait point has dimension {found}, model expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("trait dimension {dim} out of range for a model with {available} dimension(s)")]
    DimensionOutOfRange { dim: usize, available: usize },

    #[error("{what} index {index} out of range (valid: {min}..={max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid category pair (s={s}, r={r}): need s < r <= {k}")]
    InvalidPair { s: usize, r: usize, k: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid population: {0}")]
    InvalidPopulation(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidQuadrature(String),

    #[error("cannot collapse categories: {0}")]
    NotCollapsible(String),

    #[error("sweep is empty: every step violates the threshold order")]
    EmptySweep,

    #[error("QuadratureUnstable: primary rule gave {primary}, cross-check gave {secondary}")]
    QuadratureUnstable { primary: f64, secondary: f64 },

    #[error("SearchFailed: no {target} instance within {budget} draws")]
    SearchFailed { target: String, budget: usize },

    #[error("item set: {0}")]
    ItemSet(String),

    #[error("model spec: {0}")]
    Spec(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureUnstable { .. } | Error::SearchFailed { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Spec(e.to_string())
    }
}
