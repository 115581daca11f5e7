// The flat TOML configuration and its line-numbered diagnostics.

use std::error::Error;

use hyperbolic_cross::experiments::ExperimentConfig;

const GOOD: &str = r#"
experiment = "ST1"
d = 2
n = [6, 9]
a = 1.0
b = 0.5
beta = 0.5
p = 2.0
family = "lattice"
seed = 11
"#;

const BAD: &str = r#"experiment = "ST1"
d = 2
beta = 1.5
"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = ExperimentConfig::from_toml(GOOD)?;
    println!("parsed: {:?} d = {} n = {:?} family = {:?}", cfg.experiment, cfg.d, cfg.n, cfg.family);
    println!("canonical form:\n{}", cfg.to_toml());
    match ExperimentConfig::from_toml(BAD) {
        Ok(_) => return Err("out-of-range beta was accepted".into()),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
