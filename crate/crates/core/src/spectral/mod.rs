//! Frequency-set combinatorics and the two representations of trigonometric
//! polynomials: sparse coefficient maps ([`TrigPoly`]) and dense tensor grids
//! ([`GridFn`]).

mod freqset;
mod grid;
mod index;
pub mod io;
mod points;
mod poly;

pub use freqset::{
    box_cardinality, build_y, compositions, min_block_size, rho_axis, FreqSet, FreqSetKind,
    LayerLevels,
};
pub use grid::{nyquist_dims, oversampled_dims, Analysis, GridFn, GRID_VALUE_CAP};
pub use index::{axis_level, frequency_level, MultiIndex};
pub use points::{PointFamily, PointSet};
pub use poly::{TrigPoly, HERMITIAN_TOLERANCE};

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

pub(crate) fn check_dim(d: usize) -> crate::Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(crate::Error::InvalidArgument(format!(
            "dimension must be in 1..={MAX_DIM}, got {d}"
        )));
    }
    Ok(())
}
