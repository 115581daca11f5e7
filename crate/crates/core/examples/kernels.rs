// Fejér, de la Vallée Poussin and band kernels, and the Bernoulli multiplier.

use std::error::Error;

use hyperbolic_cross::decomposition::{lp_norm_detailed, sup_norm};
use hyperbolic_cross::kernels::{a_kernel, bernoulli_multiplier, fejer, fejer_value, vdp};
use hyperbolic_cross::spectral::MultiIndex;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for j in [1u64, 2, 4, 8, 64] {
        let k = fejer(j, 1)?;
        let mean = k.coeff(&MultiIndex::from([0])).re;
        let l1 = lp_norm_detailed(&k, 1.0, 8)?.value;
        let peak = k.evaluate(&[0.0])?.re;
        println!("K_{j}: mean {mean}, grid L1 {l1:.12}, K(0) = {peak}");
    }
    println!("K_2(pi) closed form = {:.3e}", fejer_value(2, std::f64::consts::PI));

    let v1 = vdp(1, 1)?;
    let coeffs: Vec<f64> = (-2..=2).map(|k| v1.coeff(&MultiIndex::from([k])).re).collect();
    println!("V_1 coefficients on -2..=2: {coeffs:?}");

    let a2 = a_kernel(&[2])?;
    let profile: Vec<f64> = (0..=4).map(|k| a2.coeff(&MultiIndex::from([k])).re).collect();
    println!("A_2 profile on 0..=4: {profile:?}");

    let f2 = bernoulli_multiplier(2.0, &MultiIndex::from([2]));
    println!("F_2 multiplier at k = 2: {f2:.6}");

    let k8 = fejer(8, 2)?;
    println!("sup K_8 (d = 2) = {:.6}", sup_norm(&k8, 8)?.value());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
