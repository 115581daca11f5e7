//! Fooling-function constructions: polynomials that vanish on a point set
//! yet are large in a target norm and small in a class gauge.

mod checks;
mod fooling;
mod integration;
pub mod linalg;
mod report;
mod vanishing;

pub use checks::{
    abeta_block_check, h_infinity_check, h_infinity_table, ABetaReport, ABetaRow, BandRow, HInfinityReport, Sp1Row,
    AUDIT_TOLERANCE,
};
pub use fooling::{fooling_function, product, scale_fooling, FoolingBlock, FoolingFunction, FoolingOptions};
pub use integration::{integration_fooler, IntegrationBlock, IntegrationFooler, IntegrationOptions};
pub use report::{
    box_witness, evaluate_witness, fooling_report, predicted_term, BoxWitness, Construction, WitnessReport,
};
pub use vanishing::{vanishing_on, vanishing_poly, VanishingOptions, VanishingPoly};

/// A witness must satisfy `max_ν |f(ξ^ν)| ≤ VANISHING_TOLERANCE · ‖f‖_∞`.
pub const VANISHING_TOLERANCE: f64 = 1e-9;

/// Deterministic per-tag seed derivation (splitmix64 steps).
pub(crate) fn mix_seed(seed: u64, tag: &[i64]) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for &t in tag {
        h ^= t as u64;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}
