//! Configuration, orchestration and persistence of experiments.

mod commands;
mod config;
mod error;
mod persist;

pub use commands::{
    build_grid, diagnose, evolution_config, initial_datum, run, run_directory, Command, DiagnoseOutcome, RunOptions,
    DIAGNOSE_FILE, INEQUALITY_FILE, INEQUALITY_SUMMARY_FILE, LIMITS_FILE, SCALING_FILE, SOLITON_PROFILE_FILE,
    SOLITON_REPORT_FILE,
};
pub use config::{
    apply_override, from_table, parse_config, parse_config_with_overrides, parse_document, DiagnosticsConfig,
    ExperimentConfig, GridConfig, InequalityConfig, InitialConfig, InitialKind, LimitsConfig, OutputConfig,
    OutputFormat, TimeConfig,
};
pub use error::{ConfigError, ConfigProblem};
pub use persist::{
    read_trajectory, sha256_hex, write_atomic, FileEntry, RunManifest, TrajectoryMeta, CONFIG_FILE, DIAGNOSTICS_FILE,
    MANIFEST_FILE, TRAJECTORY_FILE, TRAJECTORY_META_FILE,
};
