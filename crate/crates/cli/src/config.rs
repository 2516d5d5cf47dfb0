use std::path::PathBuf;

use sun_gates_core::{ChannelKind, DEFAULT_TOLERANCE};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub channel: Option<ChannelKind>,
    pub tolerance: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 3,
            channel: None,
            tolerance: DEFAULT_TOLERANCE,
            seed: 0,
            output: None,
            format: None,
        }
    }
}

impl RunConfig {
    pub fn with_n(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::Usage(format!("--n must be at least 2, got {}", self.n)));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub(crate) fn channel_or_s(&self) -> ChannelKind {
        self.channel.unwrap_or(ChannelKind::S)
    }

    /// Resolves the output format, rejecting ones the command cannot emit.
    pub(crate) fn format_for(&self, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(
                format!("{command} does not support --format {f:?}").to_lowercase(),
            ))
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] sun_gates_core::Error),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Rendered command output plus the verdict that decides the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub text: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}
