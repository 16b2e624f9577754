//! Scenario configuration, the end-to-end run, and the validation oracles.

mod config;
mod estimate;
mod oracle;
mod run;

pub use config::{ConfigError, FleetSection, OutputSection, RunConfig, PRESETS};
pub use estimate::{
    estimate, ClusterReport, Estimate, EstimatorConfig, FleetKnowledge, QuantityReport,
};
pub use oracle::{
    ks_p_value, ks_uniform, run_oracle, vertex_target, OracleCheck, OracleKind, OracleParams,
    OracleReport,
};
pub use run::{
    analyze_stage, estimate_stage, run_pipeline, simulate_stage, write_histogram, write_manifest,
    write_report, write_run, write_samples_file, write_trace_file, EstimateReport, RunError,
    RunOutput, ANGLE_HIST_FILE, CONFIG_FILE, LENGTH_HIST_FILE, MANIFEST_FILE, REPORT_FILE,
    REPORT_SCHEMA, SAMPLES_FILE, TRACES_FILE,
};
