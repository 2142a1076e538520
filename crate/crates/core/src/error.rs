use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),

    #[error("operands carry different precisions ({0} vs {1} bits)")]
    PrecisionMismatch(u32, u32),

    #[error("polynomial of degree {degree} exceeds degree bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    /// Division by `2z + 2` was not exact; some upstream coefficient is wrong.
    #[error("division by 2z+2 is not exact: {0}")]
    InexactDivision(String),

    #[error("rounding residual {residual:e} exceeds tolerance {tolerance:e} at {bits} bits")]
    Rounding {
        residual: f64,
        tolerance: f64,
        bits: u32,
    },

    #[error("invalid code spec: {0}")]
    InvalidSpec(String),

    #[error("word has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("symbol {symbol} is outside the alphabet [0, {r})")]
    SymbolOutOfRange { symbol: u32, r: u32 },

    #[error("enumeration guard tripped: {what} = {value} exceeds the limit {limit}")]
    GuardExceeded {
        what: String,
        value: String,
        limit: String,
    },

    #[error("the code is empty")]
    EmptyCode,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cache format: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn guard(
        what: impl Into<String>,
        value: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::GuardExceeded {
            what: what.into(),
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for failures that a retry at higher precision may fix.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Rounding { .. } | Error::InexactDivision(_))
    }
}
