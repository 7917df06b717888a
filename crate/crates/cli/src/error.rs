use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: stopset::Error,
    },
    #[error(transparent)]
    Compute(#[from] stopset::Error),
    #[error("writing output: {0}")]
    Output(String),
    #[error("{target}: {diffs} value(s) differ from the reference")]
    ReproDiff { target: String, diffs: usize },
}

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_COMPUTE: i32 = 4;
pub const EXIT_REPRO_DIFF: i32 = 5;
pub const EXIT_UNKNOWN_COMMAND: i32 = 6;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use stopset::Error as E;
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Compute(E::InvalidParameter(_) | E::NotDivisible { .. } | E::EmptyMatrix { .. }) => EXIT_USAGE,
            Self::Io { .. } | Self::Input { .. } | Self::Output(_) => EXIT_IO,
            Self::Compute(_) => EXIT_COMPUTE,
            Self::ReproDiff { .. } => EXIT_REPRO_DIFF,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Output(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
