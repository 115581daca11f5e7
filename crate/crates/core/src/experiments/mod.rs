//! Experiment configuration, rate fitting, CSV reporting and the runners
//! behind the `hcross` binary.
//!
//! CSV columns, in order: `experiment, d, n, m, q, p, r, a, b, beta, value,
//! predicted_term, ratio, status`. Parameters that do not apply to a row are
//! left empty; `ratio = value / predicted_term`.

mod audits;
mod config;
mod csv_out;
mod fit;
mod runners;

pub use audits::{
    audit_emb, audit_family, audit_homogeneity, audit_in4, audit_inp1, audit_s4, audit_sc1, audit_sp1,
    audit_theorem_a, run_inequalities, AuditSummary, HOMOGENEITY_TOLERANCE, INEQUALITY_TOLERANCE,
};
pub use config::{AuditFamily, ExperimentConfig, ExperimentKind, MAX_EXPERIMENT_DIM, MAX_EXPERIMENT_LEVEL};
pub use csv_out::{csv_string, unix_timestamp, write_csv, Row, CSV_COLUMNS};
pub use fit::{FitMode, RateFit, WELL_CONDITIONED_LEVELS};
pub use runners::{
    build_fooling, build_integration, level_points, q1p2_rows, qpt1_fits, qpt1_rows, run, run_q1p2, run_qpl1,
    run_qpt1, run_st1, st1_rows, ExperimentOutput,
};
