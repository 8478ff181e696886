use std::fmt;

use dgft_core::Error;

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph(_)
            | Error::DimensionMismatch { .. }
            | Error::MalformedDocument(_)
            | Error::WindowOutOfRange { .. }
            | Error::InvalidParams(_)
            | Error::InvalidCount(_) => EXIT_INPUT,
            Error::TooLarge { .. } => EXIT_TOO_LARGE,
            Error::ConvergenceFailure { .. }
            | Error::ValueOutOfRange { .. }
            | Error::DegenerateRange
            | Error::InconsistentInputs(_) => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<dgft_core::GraphError> for CliError {
    fn from(e: dgft_core::GraphError) -> Self {
        Error::from(e).into()
    }
}
