use std::path::{Path, PathBuf};

use gzl_core::engines::EngineError;
use gzl_core::harness::HarnessError;
use gzl_core::scalinglaws::ScalingError;
use gzl_core::search::SearchError;
use gzl_core::solver::SolverError;
use gzl_core::zipfstats::ZipfError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Harness(HarnessError),
    #[error(transparent)]
    Zipf(#[from] ZipfError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Scaling(#[from] ScalingError),
}

impl CliError {
    /// 2 is reserved for usage errors reported by the argument parser.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Engine(_) => 5,
            CliError::Search(_) => 6,
            CliError::Harness(_) => 7,
            CliError::Zipf(_) => 8,
            CliError::Solver(_) => 9,
            CliError::Scaling(_) => 10,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
        move |source| CliError::Io { path: path.to_path_buf(), source }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(m) => CliError::Config(m),
            HarnessError::Engine(e) => CliError::Engine(e),
            HarnessError::Search(e) => CliError::Search(e),
            HarnessError::Io(source) => CliError::Io { path: PathBuf::from("<stream>"), source },
            other => CliError::Harness(other),
        }
    }
}
