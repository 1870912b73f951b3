use std::fmt;

use shannon_core::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_NO_INPUT: u8 = 66;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    FileNotFound(String),
    /// Input that could not be parsed.
    BadInput(String),
    Domain(Error),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::FileNotFound(_) => EXIT_NO_INPUT,
            Self::BadInput(_) => EXIT_DATA,
            Self::Domain(Error::QuadratureFailure { .. }) => EXIT_INTERNAL,
            Self::Domain(_) => EXIT_DATA,
            Self::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "UsageError",
            Self::FileNotFound(_) => "FileNotFound",
            Self::BadInput(_) => "InvalidInput",
            Self::Domain(e) => e.kind(),
            Self::Internal(_) => "InternalError",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::BadInput(m) | Self::Internal(m) => f.write_str(m),
            Self::FileNotFound(path) => write!(f, "cannot read input file `{path}`"),
            Self::Domain(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}
