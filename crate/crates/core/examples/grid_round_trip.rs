// Sparse coefficients to a tensor grid and back, with aliasing detection.

use std::error::Error;

use hyperbolic_cross::spectral::{nyquist_dims, FreqSet, GridFn, MultiIndex, TrigPoly};
use hyperbolic_cross::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TrigPoly::from_terms(
        2,
        FreqSet::hyperbolic_cross(5, 2)?
            .iter()
            .map(|k| (k.clone(), Complex64::new(k[0] as f64, 1.0 / (1 + k[1].abs()) as f64))),
    )?;
    let dims = nyquist_dims(&f.degrees());
    let grid = GridFn::synthesize(&f, &dims)?;
    let back = grid.analyze();
    let err = f.sub(&back.poly)?.max_abs_coeff();
    println!("grid {:?}: round-trip error {err:.2e}, aliased = {}", dims, back.aliased);
    assert!(!back.aliased && err < 1e-12);

    let high = TrigPoly::monomial(MultiIndex::from([5]), Complex64::new(1.0, 0.0));
    let coarse = GridFn::synthesize(&high, &[8])?;
    println!("e^(5ix) on 8 nodes: aliased = {}", coarse.is_aliased());
    assert!(coarse.is_aliased());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
