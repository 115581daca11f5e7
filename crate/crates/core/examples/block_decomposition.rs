// Dyadic blocks, band blocks, layers and the comparison sums.

use std::error::Error;

use hyperbolic_cross::decomposition::{
    a_block, comparison_sum, dyadic_blocks, layers, BlockArray,
};
use hyperbolic_cross::spectral::{compositions, FreqSet, MultiIndex, TrigPoly};
use hyperbolic_cross::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TrigPoly::from_terms(
        2,
        FreqSet::hyperbolic_cross(4, 2)?
            .iter()
            .map(|k| (k.clone(), Complex64::new(1.0, (k[0] - k[1]) as f64))),
    )?;
    let blocks = dyadic_blocks(&f);
    let mut sum = TrigPoly::zero(2);
    for b in blocks.values() {
        sum = sum.add(b)?;
    }
    println!("{} dyadic blocks; partition error {:.1e}", blocks.len(), f.sub(&sum)?.max_abs_coeff());

    for (j, fj) in layers(&f) {
        println!("layer {j}: {} terms", fj.len());
    }

    let e3 = TrigPoly::monomial(MultiIndex::from([3]), Complex64::new(1.0, 0.0));
    let a = a_block(&e3, &MultiIndex::from([2]));
    println!("A_2(e^(3ix)) coefficient = {}", a.coeff(&MultiIndex::from([3])).re);

    let n = 5;
    let eps = BlockArray::from_pairs(compositions(n, 2).into_iter().map(|s| (s, 1.0)))?;
    let p = 2.0;
    let value = comparison_sum(&eps, p, f64::INFINITY)?;
    println!(
        "comparison sum over |s| = {n}: {value:.6} (closed form {:.6})",
        ((n + 1) as f64 * (-(n as f64)).exp2()).powf(1.0 / p)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
