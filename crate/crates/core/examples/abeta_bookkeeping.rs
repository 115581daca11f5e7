// Per-block `A_β` quasi-norms of a fooling function and the box inequality.

use std::error::Error;

use hyperbolic_cross::spectral::PointSet;
use hyperbolic_cross::witness::{abeta_block_check, fooling_function, FoolingOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in [6u32, 9] {
        let xi = PointSet::uniform_random(1 << (n - 1), 2, 0)?;
        let ff = fooling_function(&xi, n, &FoolingOptions::default())?;
        let rep = abeta_block_check(&ff, &[1.0, 0.5], 2.0)?;
        println!(
            "n = {n}: max |t_s|_A / 2^n = {:.4}, max |t_s|_(A_1/2) / 2^(2n) = {:.4}, box inequality {}",
            rep.max_ratio(1.0),
            rep.max_ratio(0.5),
            rep.sp1_holds()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
