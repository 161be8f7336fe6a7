use std::fmt;

/// Exit codes: 2 for bad arguments or input, 3 for numerical failures.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fraclap_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(message: impl fmt::Display) -> Self {
        CliError::Usage(message.to_string())
    }

    /// Stable name printed on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Core(e) => e.name(),
            CliError::Io(_) => "IoError",
            CliError::Csv(_) => "CsvError",
            CliError::Json(_) => "JsonError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        use fraclap_core::Error as E;
        match self {
            CliError::Core(
                E::GammaPole { .. }
                | E::DegenerateExponent
                | E::NotSymmetric { .. }
                | E::NotPositiveDefinite { .. }
                | E::NoConvergence
                | E::TooLarge { .. },
            ) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
