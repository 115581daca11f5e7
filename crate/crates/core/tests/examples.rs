//! Every example under `examples/` runs to completion.

#[allow(dead_code)]
mod frequency_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/frequency_sets.rs"));
}

#[test]
fn frequency_sets_example_runs() {
    frequency_sets::run_example().expect("frequency_sets example should run");
}

#[allow(dead_code)]
mod grid_round_trip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/grid_round_trip.rs"));
}

#[test]
fn grid_round_trip_example_runs() {
    grid_round_trip::run_example().expect("grid_round_trip example should run");
}

#[allow(dead_code)]
mod kernels {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kernels.rs"));
}

#[test]
fn kernels_example_runs() {
    kernels::run_example().expect("kernels example should run");
}

#[allow(dead_code)]
mod block_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/block_decomposition.rs"));
}

#[test]
fn block_decomposition_example_runs() {
    block_decomposition::run_example().expect("block_decomposition example should run");
}

#[allow(dead_code)]
mod norms_and_differences {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/norms_and_differences.rs"));
}

#[test]
fn norms_and_differences_example_runs() {
    norms_and_differences::run_example().expect("norms_and_differences example should run");
}

#[allow(dead_code)]
mod class_normalizers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/class_normalizers.rs"));
}

#[test]
fn class_normalizers_example_runs() {
    class_normalizers::run_example().expect("class_normalizers example should run");
}

#[allow(dead_code)]
mod vanishing_polynomial {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/vanishing_polynomial.rs"));
}

#[test]
fn vanishing_polynomial_example_runs() {
    vanishing_polynomial::run_example().expect("vanishing_polynomial example should run");
}

#[allow(dead_code)]
mod fooling_witness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fooling_witness.rs"));
}

#[test]
fn fooling_witness_example_runs() {
    fooling_witness::run_example().expect("fooling_witness example should run");
}

#[allow(dead_code)]
mod box_witness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/box_witness.rs"));
}

#[test]
fn box_witness_example_runs() {
    box_witness::run_example().expect("box_witness example should run");
}

#[allow(dead_code)]
mod integration_fooler {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/integration_fooler.rs"));
}

#[test]
fn integration_fooler_example_runs() {
    integration_fooler::run_example().expect("integration_fooler example should run");
}

#[allow(dead_code)]
mod abeta_bookkeeping {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/abeta_bookkeeping.rs"));
}

#[test]
fn abeta_bookkeeping_example_runs() {
    abeta_bookkeeping::run_example().expect("abeta_bookkeeping example should run");
}

#[allow(dead_code)]
mod rate_experiment {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rate_experiment.rs"));
}

#[test]
fn rate_experiment_example_runs() {
    rate_experiment::run_example().expect("rate_experiment example should run");
}

#[allow(dead_code)]
mod inequality_audit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/inequality_audit.rs"));
}

#[test]
fn inequality_audit_example_runs() {
    inequality_audit::run_example().expect("inequality_audit example should run");
}

#[allow(dead_code)]
mod experiment_config {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/experiment_config.rs"));
}

#[test]
fn experiment_config_example_runs() {
    experiment_config::run_example().expect("experiment_config example should run");
}
