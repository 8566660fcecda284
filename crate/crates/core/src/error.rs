use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational")]
    Empty,
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Where in a game file a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matrix {
    Gain,
    Feedback,
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Matrix::Gain => "gain",
            Matrix::Feedback => "feedback",
        })
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("arm count {0} outside supported range 2..=16")]
    ArmCount(usize),
    #[error("{0} list must be non-empty")]
    EmptyList(&'static str),
    #[error("{what} must be strictly increasing (entry {index})")]
    NotIncreasing { what: &'static str, index: usize },
    #[error("{what} entry {index} = {value} outside {range}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        value: String,
        range: &'static str,
    },
    #[error("game needs at least one action and one outcome")]
    Empty,
    #[error("{matrix} matrix has {rows}x{cols} entries, expected {expected_rows}x{expected_cols}")]
    Dimension {
        matrix: Matrix,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("{matrix} row {row} has {len} entries, expected {expected}")]
    RowLength {
        matrix: Matrix,
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("gain[{row}][{col}]: {source}")]
    BadRational {
        row: usize,
        col: usize,
        #[source]
        source: RationalParseError,
    },
    #[error("feedback[{row}][{col}]: unknown symbol {symbol:?}")]
    UnknownSymbol {
        row: usize,
        col: usize,
        symbol: String,
    },
    #[error("alphabet symbol {0:?} never occurs in the feedback matrix")]
    UnusedSymbol(String),
    #[error("duplicate {what} label {label:?}")]
    DuplicateLabel { what: &'static str, label: String },
    #[error("malformed game file: {0}")]
    Syntax(#[from] serde_json::Error),
}

#[derive(Debug, Error)]
pub enum ObservabilityError {
    #[error("signal matrices disagree on column count ({expected} vs {found})")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("actions {0} and {1} are not a reported neighbor pair")]
    NotNeighbors(usize, usize),
    #[error("encoding has no value for symbol {0:?}")]
    MissingSymbol(String),
    #[error("point-local witness needs a dueling game")]
    NotDueling,
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("environment does not fit the game: {0}")]
    Mismatch(String),
    #[error("horizon must be at least 1")]
    Horizon,
    #[error("run count must be at least 1")]
    Runs,
    #[error("exploration rate {0} outside (0, 1]")]
    Gamma(f64),
    #[error("policy needs a dueling game")]
    NotDueling,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
