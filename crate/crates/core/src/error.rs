use thiserror::Error;

/// Errors raised by the GP primitives, timing, grouping and breeding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpError {
    #[error("num_bits must be in 2..=16, got {0}")]
    BitWidth(u32),
    #[error("input x{index} out of range for a {num_bits}-bit problem")]
    InputOutOfRange { index: u8, num_bits: u8 },
    #[error("malformed program: {0}")]
    MalformedTree(String),
    #[error("individual {0} has not been evaluated")]
    NotEvaluated(usize),
    #[error("empty population")]
    EmptyPopulation,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("evaluation of individual {index} failed: {source}")]
    Evaluation {
        index: usize,
        #[source]
        source: Box<GpError>,
    },
}

/// A rejected configuration value. `key` is the config-file / flag name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid value for `{key}`: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("generation {generation}: {source}")]
    Generation {
        generation: usize,
        #[source]
        source: GpError,
    },
    #[error("run {run_index}: {source}")]
    Run {
        run_index: usize,
        #[source]
        source: Box<EngineError>,
    },
    #[error("{0}")]
    Aggregate(String),
}
