// Largest `λ` with `λ f` in each smoothness class, and the embedding check.

use std::error::Error;

use hyperbolic_cross::classes::{
    check_embedding, scale_into, scale_into_hrq, ClassSpec, EmbeddingSource, HrqMode,
};
use hyperbolic_cross::spectral::{FreqSet, TrigPoly};
use hyperbolic_cross::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TrigPoly::from_terms(
        2,
        FreqSet::hyperbolic_cross(5, 2)?
            .iter()
            .map(|k| (k.clone(), Complex64::new(1.0 / (1 + k.l1().abs()) as f64, 0.0))),
    )?;
    let classes = [
        ClassSpec::Wrq { r: 1.5, q: 2.0 },
        ClassSpec::Hrq { r: 1.5, q: 2.0 },
        ClassSpec::WabA { a: 1.0, b: 0.0, beta: 1.0 },
        ClassSpec::HabA { a: 1.0, b: 0.5, beta: 0.5 },
    ];
    for class in classes {
        let rep = scale_into(&f, class, HrqMode::Proxy, 8)?;
        let binding = rep.binding_constraint().map(|c| c.label.clone()).unwrap_or_default();
        println!("{class}: scale {:.6e} ({:?}, binding {binding})", rep.scale, rep.criterion);
    }

    let proxy = scale_into_hrq(&f, 1.5, 2.0, HrqMode::Proxy)?.scale;
    let direct = scale_into_hrq(&f, 1.5, 2.0, HrqMode::Direct)?.scale;
    println!("H^1.5_2 proxy/direct scale ratio: {:.4}", proxy / direct);

    for source in [EmbeddingSource::Sobolev, EmbeddingSource::Holder] {
        let rep = check_embedding(&f, 1.5, 2.0, source)?;
        println!("{source:?} embedding: a = {}, b = {}, max ratio {:.4}", rep.a, rep.b, rep.max_ratio);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
