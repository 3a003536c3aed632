//! Experiment driver for the `kbcat` library: config files, run
//! directories and improvement tables.

use std::path::{Path, PathBuf};

pub mod config;
pub mod dataset;
pub mod experiment;

pub use config::{load_config, Dataset, EvalMode, ExperimentConfig};
pub use experiment::{emit_improvement_table, run_experiment, ExperimentOutput, RunManifest, Stage, Summary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: kbcat::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
