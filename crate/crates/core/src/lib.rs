//! Hyperbolic-cross trigonometric analysis on the torus `[0, 2π)^d`.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectral`]: multi-indices, frequency sets (dyadic blocks, step
//!   hyperbolic crosses, boxes), sparse trigonometric polynomials, dense grid
//!   functions and the FFT transforms between them.
//! * [`kernels`]: Fejér, de la Vallée Poussin, band kernels `A_s` and the
//!   Bernoulli-type multiplier `F_r`.
//! * [`decomposition`]: dyadic blocks `δ_s`, band blocks `A_s(f)`, layers,
//!   norms and quasi-norms, mixed differences and the Littlewood–Paley
//!   comparison sums.
//! * [`classes`]: membership normalizers for `W^r_q`, `H^r_q`,
//!   `W^{a,b}_{A_β}` and `H^{a,b}_{A_β}`.
//! * [`witness`]: fooling-function constructions that vanish on a point set
//!   while staying large in `L_p`, plus their certification reports.
//! * [`experiments`]: configuration, rate fitting, CSV reporting and the
//!   experiment runners behind the `hcross` binary.

// Parameter checks use `!(x > 0.0)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classes;
pub mod decomposition;
pub mod error;
pub mod experiments;
pub mod kernels;
pub mod spectral;
pub mod witness;

pub use error::{Error, Result};
pub use num_complex::Complex64;
