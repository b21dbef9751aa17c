//! Experiment harness: configuration, trial batches, bias scans, audits
//! and persistence.

pub mod audit;
pub mod bias;
pub mod config;
pub mod records;
pub mod trials;

pub use audit::{run_audit_batch, tally, AuditTally, SeededAudit};
pub use bias::{bias_scan, estimate_critical_bias, wilson, BiasEstimate, CurvePoint};
pub use config::{parse_b_range, BoardKind, Config, ConfigError};
pub use records::{
    read_jsonl, summarize, trials_to_jsonl, write_csv, write_jsonl, write_timings, Manifest, StrategyInfo, SummaryRow,
    TrialRecord, MANIFEST_SCHEMA, TRIAL_SCHEMA,
};
pub use trials::{board_for, check_strategies, run_trial, run_trial_full, run_trials, with_threads};
