use std::io;
use std::path::PathBuf;

use obslab_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    /// Malformed or inconsistent input: flags, grids, scenario files.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot write report: {0}")]
    Output(#[from] io::Error),
    #[error("{0}")]
    Analysis(#[from] Error),
}

impl CliError {
    /// 2 for invalid input, 3 for numerical failure, 4 when a hypothesis of
    /// the requested analysis does not hold for the system.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } | CliError::Output(_) => 2,
            CliError::Analysis(e) => match e {
                Error::NoConvergence { .. } | Error::ToleranceNotMet => 3,
                Error::ZeroEigenvalue { .. }
                | Error::Precondition(_)
                | Error::DivergentKernel
                | Error::NotInfiniteTimeAdmissible
                | Error::InsufficientModes { .. }
                | Error::SquareFunctionFails
                | Error::DeltaZero
                | Error::NoFiniteTau
                | Error::NotExactlyObservable => 4,
                Error::NegativeRealPart { .. }
                | Error::NotPsd { .. }
                | Error::NotHermitian
                | Error::DimensionMismatch { .. }
                | Error::EmptySystem
                | Error::NegativeTime
                | Error::InvalidGrid(_)
                | Error::InvalidArgument(_) => 2,
            },
        }
    }
}
