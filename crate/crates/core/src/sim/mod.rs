//! Experiment runner behind the `risce` command-line tool.

pub mod config;
pub mod output;
pub mod runner;

pub use config::{ExperimentConfig, OverheadMode};
pub use output::{NmseRow, OverheadRow};
pub use runner::{run_nmse_sweep, run_overhead_table, trial_seed, NmseSweep};
