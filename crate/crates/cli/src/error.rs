use std::fmt;

/// Everything a command can fail with, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config keys or values: exit 2.
    Usage(String),
    Config(String),
    /// Output could not be written: exit 2, since it is the configured
    /// output location that is unusable.
    Io(std::io::Error),
    /// Library failure. Precondition violations exit 2, numerical ones 1.
    Numerical(euler_lax::Error),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use euler_lax::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(e) => match e {
                E::InvalidGrid { .. }
                | E::InvalidParameter { .. }
                | E::UnknownInitialCondition(_)
                | E::NonStationary { .. }
                | E::BoxTooLarge { .. }
                | E::BandOverflow { .. } => EXIT_USAGE,
                _ => EXIT_FAIL,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<euler_lax::Error> for CliError {
    fn from(e: euler_lax::Error) -> Self {
        CliError::Numerical(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
