use std::io;
use std::path::PathBuf;

use macc_core::compactor::CompactError;
use macc_core::row_scanner::ParseBitsError;
use macc_core::{ContainerError, PgmError, SynthError};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Pgm { path: PathBuf, source: PgmError },

    #[error("{}: {source}", path.display())]
    Container {
        path: PathBuf,
        source: ContainerError,
    },

    #[error("verification failed: decompressed image differs from {}", .0.display())]
    VerifyFailed(PathBuf),

    #[error("generator: {0}")]
    Synth(#[from] SynthError),

    #[error("bad argument: {0}")]
    Argument(String),

    #[error("bad mask: unexpected character {:?}", .0.0)]
    Mask(#[from] ParseBitsError),

    #[error("compaction: {0}")]
    Compact(#[from] CompactError),

    #[error("report: {0}")]
    Report(#[from] csv::Error),
}

impl CliError {
    /// Process exit status. Clap reserves 2 for usage errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } => 3,
            CliError::Write { .. } | CliError::Report(_) => 4,
            CliError::Pgm { .. } => 5,
            CliError::Container { source, .. } => match source {
                ContainerError::BadMagic => 6,
                ContainerError::UnsupportedVersion(_) => 7,
                _ => 8,
            },
            CliError::VerifyFailed(_) => 9,
            CliError::Synth(_) | CliError::Argument(_) => 10,
            CliError::Mask(_) | CliError::Compact(_) => 11,
        }
    }
}
