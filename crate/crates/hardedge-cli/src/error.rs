use thiserror::Error;

/// Failures of a CLI run, each tied to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

/// Bad inputs are usage errors; anything the numerics could not resolve is a
/// non-convergence.
impl From<hardedge::Error> for CliError {
    fn from(e: hardedge::Error) -> Self {
        use hardedge::Error as E;
        match e {
            E::InvalidOrder(_)
            | E::Domain(_)
            | E::DegenerateInterval { .. }
            | E::NotInSpace(_)
            | E::DegenerateSymbol(_)
            | E::Precondition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
