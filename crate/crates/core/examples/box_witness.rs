// Single-box witness in the unit `L_q` ball of `T(2N)`.

use std::error::Error;

use hyperbolic_cross::spectral::PointSet;
use hyperbolic_cross::witness::{box_witness, VanishingOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let xi = PointSet::new(1, vec![vec![0.0]])?;
    let w = box_witness(&xi, &[1], 2.0, 2.0, &VanishingOptions::default())?;
    println!("d = 1, N = 1: value {:.6}, predicted {}", w.value, w.predicted_term);

    for size in [2u32, 3, 4] {
        let n_box = [size, size];
        let m = ((2 * size + 1).pow(2) / 2) as usize;
        let xi = PointSet::uniform_random(m, 2, 3)?;
        let w = box_witness(&xi, &n_box, 1.0, 2.0, &VanishingOptions::default())?;
        println!(
            "N = ({size},{size}), m = {m}: value {:.4}, theta^(1/2) = {:.4}, ratio {:.4}, residual {:.1e}",
            w.value, w.predicted_term, w.ratio, w.vanishing_residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
