use game_decomp::GameError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input or arguments.
    #[error("{0}")]
    Invalid(String),

    #[error("{context}: {source}")]
    Game {
        context: String,
        #[source]
        source: GameError,
    },
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn game(context: impl Into<String>, source: GameError) -> Self {
        Self::Game {
            context: context.into(),
            source,
        }
    }

    /// 1 for validation errors, 2 for numeric or precondition failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } | Self::Invalid(_) => 1,
            Self::Game { source, .. } => match source {
                GameError::Dimension(_) | GameError::Domain(_) => 1,
                GameError::Precondition { .. }
                | GameError::NotSymmetric { .. }
                | GameError::Integration { .. }
                | GameError::Capacity(_) => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
