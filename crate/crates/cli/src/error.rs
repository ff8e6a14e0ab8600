use std::fmt;

use moment_models::Error;

/// Failure with its process exit code: 1 for malformed or insufficient
/// input, 2 for a classification violation, 3 for a numerical failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn code(&self) -> u8 {
        self.code
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NotPositive { .. }
            | Error::InconsistentRank { .. }
            | Error::RankExceeded { .. }
            | Error::NotDoublePositive { .. }
            | Error::NotHerglotz(_)
            | Error::NotVanishingAtInfinity { .. } => Self::violation(message),
            Error::SingularSystem(_) | Error::Inconsistent(_) | Error::DivisionByZeroPolynomial => {
                Self::numerical(message)
            }
            _ => Self::malformed(message),
        }
    }
}
