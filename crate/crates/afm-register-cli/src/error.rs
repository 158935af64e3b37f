use std::fmt;

/// Errors surfaced by the command layer, each with a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or missing configuration, with the offending line or field.
    Config(String),
    /// Quadrature failed to converge or met a non-finite integrand.
    Numerical(afm_register::Error),
    /// An argument outside a function's domain.
    Domain(afm_register::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// 2 config, 3 convergence, 4 domain; I/O failures count as config errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Domain(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(e) | CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<afm_register::Error> for CliError {
    fn from(e: afm_register::Error) -> Self {
        use afm_register::Error as E;
        match e {
            E::Convergence { .. } | E::Integrand { .. } => CliError::Numerical(e),
            E::Domain { .. } | E::Regime(_) => CliError::Domain(e),
            E::Config(m) => CliError::Config(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
