// The fooling function on `Y_{n,3}` and its witness report against `H^r_q`.

use std::error::Error;

use hyperbolic_cross::classes::ClassSpec;
use hyperbolic_cross::spectral::PointSet;
use hyperbolic_cross::witness::{fooling_function, fooling_report, FoolingOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 6;
    let xi = PointSet::uniform_random(1 << (n - 1), 2, 0)?;
    let ff = fooling_function(&xi, n, &FoolingOptions::default())?;
    println!(
        "n = {n}, m = {}: residual {:.2e}, support in Q_(n+d) {}, blocks unique {}, cutoff {}",
        xi.len(),
        ff.vanishing_residual,
        ff.support_in_cross,
        ff.blocks_unique,
        ff.cutoff_holds()
    );
    for b in &ff.blocks {
        println!(
            "  block {}: |t_s(x*)|/2^n = {:.4}, dominant block {} at {:.3}",
            b.level, b.peak_ratio, b.dominant_block, b.dominant_ratio
        );
    }
    for (q, p) in [(2.0, 2.0), (1.0, 2.0)] {
        let rep = fooling_report(&ff, ClassSpec::Hrq { r: 1.5, q }, p, 8)?;
        println!(
            "  q = {q}, p = {p}: value {:.4}, predicted {:.4}, ratio {:.4}, class value {:.3e}",
            rep.value, rep.predicted_term, rep.ratio, rep.class_value
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
