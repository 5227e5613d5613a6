use std::io;

/// Input and output failures of the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `{key}` in [{section}]")]
    MissingKey {
        section: &'static str,
        key: &'static str,
    },
    #[error("line {line}: {source}")]
    Poly {
        line: usize,
        source: cipoints_core::Error,
    },
    #[error(transparent)]
    Core(#[from] cipoints_core::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
