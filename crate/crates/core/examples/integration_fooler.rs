// Linear-programming integration fooler and its `H^r_∞` band table.

use std::error::Error;

use hyperbolic_cross::spectral::PointSet;
use hyperbolic_cross::witness::{h_infinity_check, integration_fooler, IntegrationOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let empty = PointSet::empty(2)?;
    let fool = integration_fooler(&empty, 4, &IntegrationOptions::default())?;
    println!("no points, n = 4: mean {:.6} over {} blocks", fool.mean, fool.blocks.len());

    for n in [4u32, 5] {
        let xi = PointSet::uniform_random(1 << (n - 1), 2, 1)?;
        let fool = integration_fooler(&xi, n, &IntegrationOptions::default())?;
        let h = h_infinity_check(&fool, 1.0)?;
        println!(
            "n = {n}, N = {}: mean {:.4}, mean/n {:.4}, audit sup {:.4}, band ratio {:.4}, support {}",
            xi.len(),
            fool.mean,
            fool.ratio,
            fool.max_audit_sup,
            h.max_ratio,
            h.support_vanishing_holds()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
