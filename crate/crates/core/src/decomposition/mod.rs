//! Dyadic and band block decompositions, norms and quasi-norms, mixed
//! differences and the Littlewood–Paley comparison sums.

mod blocks;
mod comparison;
mod differences;
mod norms;

pub use blocks::{a_block, band_blocks, delta_block, dyadic_blocks, layer, layers};
pub use comparison::{comparison_sum, BlockArray};
pub use differences::{difference_multiplier, mixed_difference, mixed_difference_grid};
pub use norms::{
    a_beta_norm, a_norm, budget_oversample, lp_norm, lp_norm_detailed, norm, norm_grid, sup_norm,
    LpEstimate, NormKind, NormRequest, SupEstimate, DEFAULT_OVERSAMPLE, WORKING_GRID_BUDGET,
};
