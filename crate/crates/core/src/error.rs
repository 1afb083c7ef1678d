use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),

    #[error("hyperplane {index} is vertical (rotate the configuration first)")]
    VerticalHyperplane { index: usize },

    #[error("numerical rank is {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("singular coefficient system for column {column}")]
    SingularSystem { column: usize },

    /// 1-based column index in the pattern passed by the caller.
    #[error("Overdetermined: column {column} has {zeros} zeros > r\u{2212}1 = {limit}")]
    Overdetermined {
        column: usize,
        zeros: usize,
        limit: usize,
    },

    #[error("precision exhausted: no sign-exact rounding up to denominator 2^{max_bits}")]
    PrecisionExhausted { max_bits: u32 },

    #[error("fixture corrupt: {0}")]
    FixtureCorrupt(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
