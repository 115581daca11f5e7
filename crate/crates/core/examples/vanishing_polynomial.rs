// A unit-sup polynomial on a dyadic block that vanishes on given points.

use std::error::Error;

use hyperbolic_cross::spectral::{MultiIndex, PointSet};
use hyperbolic_cross::witness::{vanishing_poly, VanishingOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let xi = PointSet::new(1, vec![vec![0.0]])?;
    let v = vanishing_poly(&xi, &MultiIndex::from([1]), &VanishingOptions::default())?;
    println!("d = 1, xi = {{0}}, s = 1: x* = {:.6}, sup {:.6}", v.x_star[0], v.sup.value());

    let xi = PointSet::uniform_random(32, 2, 7)?;
    let v = vanishing_poly(&xi, &MultiIndex::from([3, 3]), &VanishingOptions::default())?;
    println!(
        "d = 2, m = 32, s = (3,3): null dim {}, residual {:.2e}, pivot ratio {:.2e}, ill-conditioned {}",
        v.null_dim, v.residual, v.pivot_ratio, v.ill_conditioned
    );
    println!("x* = {:?}, sup slack {:.2e}", v.x_star, v.sup_slack);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
