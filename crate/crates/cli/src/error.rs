use effmat::Error;

/// Failure classes of the binary, one per nonzero exit code that is not a
/// verdict (inefficient vector, unequal or undecided comparison).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliError {
    /// Unreadable or invalid input: exit 2.
    Parse(String),
    /// Dimension beyond the enumeration cap: exit 3.
    Cap(String),
    /// Inputs with incompatible dimensions: exit 4.
    Mismatch(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Cap(m) | CliError::Mismatch(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionExceedsCap { .. } => CliError::Cap(e.to_string()),
            Error::DimensionMismatch { .. } => CliError::Mismatch(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}
