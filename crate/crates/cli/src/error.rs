use serde::Serialize;
use thiserror::Error;

use qwitt_core::Error as CoreError;

/// Exit statuses: 0 success, 2 mathematical finding, 3 configuration error,
/// 4 I/O or parse error.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "Config",
            CliError::Io(_) => "Io",
            CliError::Core(e) => match e {
                CoreError::DivisionByZero(_) => "DivisionByZero",
                CoreError::EvalPole(_) => "EvalPole",
                CoreError::InadmissibleSample(_) => "InadmissibleSample",
                CoreError::Parse { .. } => "Parse",
                CoreError::OutOfWindow { .. } => "OutOfWindow",
                CoreError::InvalidWindow(_) => "InvalidWindow",
                CoreError::WrongSector { .. } => "WrongSector",
                CoreError::RecursionOutOfWindow { .. } => "RecursionOutOfWindow",
                CoreError::ResidualNonzero { .. } => "ResidualNonzero",
                CoreError::NotCoboundaryOnCore(_) => "NotCoboundaryOnCore",
                CoreError::Precondition(_) => "Precondition",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 3,
            CliError::Io(_) => 4,
            CliError::Core(e) => match e {
                CoreError::Parse { .. } => 4,
                CoreError::ResidualNonzero { .. } | CoreError::NotCoboundaryOnCore(_) | CoreError::Precondition(_) => 2,
                _ => 3,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let r = ErrorRecord { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() };
        serde_json::to_string(&r).expect("serializable")
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
