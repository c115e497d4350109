use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors raised by every module of the crate.
///
/// [`Error::name`] returns the bare variant name; the CLI prints it on
/// stderr so scripts can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),

    #[error("alphabet size {0} exceeds the supported maximum of 256")]
    AlphabetTooLarge(usize),

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("probability `{value}` for symbol {symbol} is negative or not finite")]
    InvalidProbability { symbol: usize, value: String },

    #[error("probabilities sum to {0}, not 1")]
    NonNormalizedMeasure(String),

    #[error("measure assigns zero probability to symbol {0}")]
    NonPositiveMeasure(usize),

    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),

    #[error("H(alpha) + D(alpha||beta) = 0, the formula value is undefined")]
    DegenerateFormula,

    #[error("symbol {symbol} at position {position} is outside the alphabet of size {k}")]
    SymbolOutOfRange { symbol: usize, position: usize, k: usize },

    #[error("block length must be positive")]
    EmptyBlock,

    #[error("need a prefix of {required} symbols, only {available} available")]
    InsufficientPrefix { required: usize, available: usize },

    #[error("input string is empty")]
    EmptyInput,

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("compressor is not information-lossless: `{first}` and `{second}` collide")]
    NotInformationLossless { first: String, second: String },

    #[error("gambler bets zero on symbol {symbol} in state {state}")]
    VanishingBets { state: usize, symbol: usize },

    #[error("block space {k}^{l} is too large to enumerate")]
    BlockTooLarge { k: usize, l: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact arithmetic unavailable: {0}")]
    NotExact(String),

    #[error("alphabet size {0} is not supported by the digit sequence format (k <= 10)")]
    UnsupportedFileAlphabet(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::AlphabetTooSmall(_) => "AlphabetTooSmall",
            Error::AlphabetTooLarge(_) => "AlphabetTooLarge",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidProbability { .. } => "InvalidProbability",
            Error::NonNormalizedMeasure(_) => "NonNormalizedMeasure",
            Error::NonPositiveMeasure(_) => "NonPositiveMeasure",
            Error::AlphabetMismatch(..) => "AlphabetMismatch",
            Error::DegenerateFormula => "DegenerateFormula",
            Error::SymbolOutOfRange { .. } => "SymbolOutOfRange",
            Error::EmptyBlock => "EmptyBlock",
            Error::InsufficientPrefix { .. } => "InsufficientPrefix",
            Error::EmptyInput => "EmptyInput",
            Error::InvalidAutomaton(_) => "InvalidAutomaton",
            Error::NotInformationLossless { .. } => "NotInformationLossless",
            Error::VanishingBets { .. } => "VanishingBets",
            Error::BlockTooLarge { .. } => "BlockTooLarge",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NotExact(_) => "NotExact",
            Error::UnsupportedFileAlphabet(_) => "UnsupportedFileAlphabet",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
