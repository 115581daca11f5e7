// `L_p`, sup, `A` and `A_β` norms, and spectral mixed differences.

use std::error::Error;

use hyperbolic_cross::decomposition::{a_beta_norm, a_norm, lp_norm_detailed, mixed_difference, sup_norm};
use hyperbolic_cross::spectral::{MultiIndex, TrigPoly};
use hyperbolic_cross::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cos = TrigPoly::from_terms(
        1,
        [
            (MultiIndex::from([1]), Complex64::new(0.5, 0.0)),
            (MultiIndex::from([-1]), Complex64::new(0.5, 0.0)),
        ],
    )?;
    let l4 = lp_norm_detailed(&cos, 4.0, 8)?;
    println!("||cos||_4 = {:.12} (exact = {}), (3/8)^(1/4) = {:.12}", l4.value, l4.exact, 0.375f64.powf(0.25));
    let l3 = lp_norm_detailed(&cos, 3.0, 8)?;
    println!("||cos||_3 ≈ {:.9}, refinement delta {:?}", l3.value, l3.refinement_delta);
    let sup = sup_norm(&cos, 8)?;
    println!("sup |cos|: grid {:.12}, polished {:.12}", sup.grid_max, sup.polished);

    let g = TrigPoly::from_terms(
        1,
        [
            (MultiIndex::from([1]), Complex64::new(3.0, 0.0)),
            (MultiIndex::from([-7]), Complex64::new(-4.0, 0.0)),
        ],
    )?;
    println!("A-norm {}; A_1/2 quasi-norm {:.12} (7 + 4 sqrt 3 = {:.12})", a_norm(&g), a_beta_norm(&g, 0.5)?, 7.0 + 4.0 * 3f64.sqrt());

    let e = TrigPoly::monomial(MultiIndex::from([1, 0]), Complex64::new(1.0, 0.0));
    let t = 0.7;
    let diff = mixed_difference(&e, &[0], &[t, 0.0], 1)?;
    println!(
        "||Δ_t e^(ix)||_2 = {:.12}, 2|sin(t/2)| = {:.12}",
        lp_norm_detailed(&diff, 2.0, 8)?.value,
        2.0 * (t / 2.0).sin().abs()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
