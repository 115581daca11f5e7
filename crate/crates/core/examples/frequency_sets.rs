// Dyadic blocks, step hyperbolic crosses, boxes and the level set `Y_{n,3}`.

use std::error::Error;

use hyperbolic_cross::spectral::{box_cardinality, build_y, min_block_size, FreqSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rho = FreqSet::rho(&[2])?;
    let members: Vec<i64> = rho.iter().map(|k| k[0]).collect();
    println!("rho(2) = {members:?}");
    assert_eq!(members, vec![-3, -2, 2, 3]);

    for (n, d) in [(2u32, 1usize), (1, 2), (4, 2), (6, 2), (6, 3)] {
        let q = FreqSet::hyperbolic_cross(n, d)?;
        println!("|Q_{n}| in d = {d}: {}", q.len());
    }

    let n_box = [3u32, 1];
    let b = FreqSet::boxed(&n_box)?;
    assert_eq!(b.len() as u64, box_cardinality(&n_box));
    println!("|Pi(3,1)| = {}", b.len());

    for (n, d) in [(6u32, 2usize), (9, 2), (12, 2), (9, 3), (7, 2)] {
        let y = build_y(n, d);
        let levels: Vec<String> = y.levels.iter().map(|s| s.to_string()).collect();
        match y.warning {
            Some(w) => println!("Y_({n},3), d = {d}: empty ({w})"),
            None => println!("Y_({n},3), d = {d}: {levels:?}"),
        }
    }
    println!("S_3 (d = 2) = {}", min_block_size(3, 2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
