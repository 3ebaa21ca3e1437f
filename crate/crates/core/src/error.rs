use thiserror::Error;

/// Failures of the ideal arithmetic itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("value group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("mixed quadratic radicands {0} and {1}")]
    RadicandMismatch(u32, u32),
    #[error("rank-{0} cuts are not supported by this operation")]
    UnsupportedRank(usize),
    #[error("radical of the unit ideal is undefined")]
    UnitRadical,
    #[error("ideal is not integral: {0}")]
    NotIntegral(String),
    #[error("unknown maximal ideal `{0}`")]
    UnknownSlot(String),
    #[error("presentation is not h-local (shared primes: {0})")]
    NotHLocal(String),
    #[error("ideal violates shared-prime consistency at `{0}`")]
    Inconsistent(String),
    #[error("binary operation `{0}` needs a second ideal")]
    MissingOperand(String),
    #[error("oracle needs Z-only value groups; slot `{0}` has a Q level")]
    NotDiscrete(String),
    #[error("oracle bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("truncation level {have} too small, need at least {need}")]
    TruncationTooSmall { have: u32, need: u32 },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Failures while reading a presentation file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: AlgebraError,
    },
}

impl ParseError {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, column, message: message.into() }
    }

    /// Re-anchors a position-less error at `line`, keeping the column.
    pub(crate) fn at_line(self, line: usize, column: usize) -> Self {
        match self {
            ParseError::Syntax { line: 0, message, .. } => ParseError::Syntax { line, column, message },
            other => other,
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
