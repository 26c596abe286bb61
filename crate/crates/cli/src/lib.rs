//! Batch front end: session files in, text or structured reports out.

mod commands;
mod report;
mod session;

pub use commands::{run, validate_ring, Command, Request};
pub use report::{Format, Report};
pub use session::{Session, Workspace};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] starchains::Error),
}

impl CliError {
    /// 1 usage or parse, 2 hypothesis, 3 cap or size limit, 4 theorem violation.
    pub fn exit_code(&self) -> u8 {
        use starchains::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                E::Parse { .. } | E::UnknownVariable(_) | E::InvalidModulus(_) | E::InvalidRing(_) => 1,
                E::RingMismatch
                | E::NotHomogeneous(_)
                | E::NotMPrimary
                | E::Hypothesis(_)
                | E::InvalidArgument(_) => 2,
                E::CapExceeded(_) | E::TooLarge(_) | E::ExponentOverflow(_) => 3,
                E::TheoremViolation(_) | E::Linear(_) => 4,
            },
        }
    }
}
