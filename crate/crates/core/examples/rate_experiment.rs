// A configured rate experiment: CSV rows plus exponent fits.

use std::error::Error;

use hyperbolic_cross::experiments::{run, ExperimentConfig, ExperimentKind};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = ExperimentConfig {
        n: vec![6, 9],
        q: 1.0,
        p: 2.0,
        ..ExperimentConfig::new(ExperimentKind::QpT1)
    };
    let out = run(&cfg)?;
    print!("{}", out.csv(&cfg)?);

    let cfg = ExperimentConfig {
        n: vec![3, 4, 5, 6],
        ..ExperimentConfig::new(ExperimentKind::Q1P2)
    };
    let out = run(&cfg)?;
    print!("{}", out.csv(&cfg)?);
    for fit in &out.fits {
        println!("{fit}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
