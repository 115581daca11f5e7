// Seeded audits of the norm inequalities.

use std::error::Error;

use hyperbolic_cross::experiments::{run, AuditFamily, ExperimentConfig, ExperimentKind};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = ExperimentConfig {
        trials: 200,
        families: vec![AuditFamily::Sp1, AuditFamily::S4, AuditFamily::Sc1, AuditFamily::TheoremA],
        ..ExperimentConfig::new(ExperimentKind::Inequalities)
    };
    let out = run(&cfg)?;
    print!("{}", out.csv(&cfg)?);
    println!("violations: {}", out.violations.len());
    if !out.violations.is_empty() {
        return Err(out.violations.join("; ").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
