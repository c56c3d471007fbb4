use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero{}", context_suffix(.0))]
    DivisionByZero(String),
    #[error("denominator vanishes at q = {0}")]
    EvalPole(String),
    #[error("inadmissible sample q = {0}")]
    InadmissibleSample(String),
    #[error("cannot parse {what}: {message}")]
    Parse { what: &'static str, message: String },
    #[error("index {index} lies outside the window |n| <= {bound}")]
    OutOfWindow { index: i64, bound: i64 },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("sector ({parity}, s = {s}) is not handled here: {expected}")]
    WrongSector { parity: String, s: i64, expected: String },
    #[error("recursion needs index {index} outside the window |n| <= {bound}")]
    RecursionOutOfWindow { index: i64, bound: i64 },
    #[error("residual nonzero at {slot}: {value}")]
    ResidualNonzero { slot: String, value: String },
    #[error("not a coboundary on the core: {0}")]
    NotCoboundaryOnCore(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

fn context_suffix(s: &str) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!(" ({s})")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
