//! Command-line front end.

pub mod config;
pub mod expr;
pub mod run;

use thiserror::Error;

pub use config::{parse_config, Args, RunConfig};
pub use expr::{parse_expression, ExprError, Expression};
pub use run::{
    history_csv, run_command, run_config, summary_json, Function, SeedRun, SummaryEntry,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("run failed for seed {seed}: {source}")]
    Run {
        seed: u64,
        #[source]
        source: crate::error::StaError,
    },

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run { .. } | CliError::Io(_) => 1,
        }
    }
}
