//! Config-driven experiment runner for the two-level geometric-phase
//! laboratory: parses TOML experiment descriptions, dispatches the library
//! methods over branches and sweeps, and emits machine-readable records.

pub mod config;
pub mod runner;
pub mod trace;
pub mod verify;

pub use config::{ConfigError, ExperimentConfig};
pub use runner::{run_experiment, ResultRecord, RunError};
