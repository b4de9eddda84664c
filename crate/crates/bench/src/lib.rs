//! Multi-trial benchmark runner, CSV and plot emission, and the `relreg`
//! command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{BenchSettings, RunConfig, Variant};
pub use error::{BenchError, Result};
pub use output::{emit_csv, emit_plot_script, emit_summary, read_csv, write_report, CsvRow};
pub use runner::{
    run_benchmark, Axis, BenchReport, CheckpointStat, SamplerSummary, Summary, TrialOutcome,
};
