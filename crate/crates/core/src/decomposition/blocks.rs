use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::kernels::{band_levels, band_multiplier};
use crate::spectral::{frequency_level, MultiIndex, TrigPoly};

/// `δ_s(f) = Σ_{k ∈ ρ(s)} f̂(k) e^{i(k,x)}`.
pub fn delta_block(f: &TrigPoly, s: &MultiIndex) -> TrigPoly {
    f.restrict(|k| &frequency_level(k) == s)
}

/// `A_s(f)`: convolution with the band kernel, i.e. `f̂(k) Â_s(k)`.
pub fn a_block(f: &TrigPoly, s: &MultiIndex) -> TrigPoly {
    f.multiply(|k| Complex64::new(band_multiplier(s, k), 0.0))
}

/// `f_j = Σ_{‖s‖₁ = j} δ_s(f)`.
pub fn layer(f: &TrigPoly, j: u32) -> TrigPoly {
    f.restrict(|k| frequency_level(k).l1() == j as i64)
}

/// All nonzero dyadic blocks `δ_s(f)`, keyed by level.
pub fn dyadic_blocks(f: &TrigPoly) -> BTreeMap<MultiIndex, TrigPoly> {
    let mut out: BTreeMap<MultiIndex, TrigPoly> = BTreeMap::new();
    for (k, c) in f.terms() {
        out.entry(frequency_level(k))
            .or_insert_with(|| TrigPoly::zero(f.dim()))
            .add_term(k.clone(), *c);
    }
    out
}

/// All nonzero layers `f_j`, keyed by `j`.
pub fn layers(f: &TrigPoly) -> BTreeMap<u32, TrigPoly> {
    let mut out: BTreeMap<u32, TrigPoly> = BTreeMap::new();
    for (k, c) in f.terms() {
        out.entry(frequency_level(k).l1() as u32)
            .or_insert_with(|| TrigPoly::zero(f.dim()))
            .add_term(k.clone(), *c);
    }
    out
}

/// All band blocks `A_s(f)` that can be nonzero, keyed by level. A frequency
/// contributes to at most `2^d` blocks.
pub fn band_blocks(f: &TrigPoly) -> BTreeMap<MultiIndex, TrigPoly> {
    let d = f.dim();
    let mut out: BTreeMap<MultiIndex, TrigPoly> = BTreeMap::new();
    for (k, c) in f.terms() {
        let per_axis: Vec<Vec<u32>> = k.as_slice().iter().map(|&kj| band_levels(kj)).collect();
        if per_axis.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; d];
        loop {
            let s = MultiIndex::new(
                idx.iter()
                    .zip(&per_axis)
                    .map(|(&i, levels)| levels[i] as i64)
                    .collect::<Vec<_>>(),
            );
            let m = band_multiplier(&s, k);
            out.entry(s)
                .or_insert_with(|| TrigPoly::zero(d))
                .add_term(k.clone(), c * m);
            let mut j = d;
            let mut done = true;
            while j > 0 {
                j -= 1;
                idx[j] += 1;
                if idx[j] < per_axis[j].len() {
                    done = false;
                    break;
                }
                idx[j] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::FreqSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(k: i64) -> TrigPoly {
        TrigPoly::monomial(MultiIndex::from([k]), Complex64::new(1.0, 0.0))
    }

    fn random_on(set: &FreqSet, seed: u64) -> TrigPoly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TrigPoly::from_terms(
            set.dim(),
            set.iter().map(|k| {
                (
                    k.clone(),
                    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn delta_block_examples() {
        let f = mono(5);
        assert_eq!(delta_block(&f, &MultiIndex::from([3])), f);
        assert!(delta_block(&f, &MultiIndex::from([2])).is_zero());
    }

    #[test]
    fn a_block_examples() {
        let s2 = MultiIndex::from([2]);
        assert_eq!(a_block(&mono(2), &s2), mono(2));
        assert!(a_block(&TrigPoly::constant(1, Complex64::new(1.0, 0.0)), &s2).is_zero());
        let half = a_block(&mono(3), &s2);
        assert_eq!(half.coeff(&MultiIndex::from([3])), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn blocks_and_layers_partition() {
        let q4 = FreqSet::hyperbolic_cross(4, 2).unwrap();
        let f = random_on(&q4, 1);
        let mut sum = TrigPoly::zero(2);
        for (s, block) in dyadic_blocks(&f) {
            assert!(s.l1() <= 4);
            assert_eq!(block, delta_block(&f, &s));
            sum = sum.add(&block).unwrap();
        }
        assert_eq!(sum, f);
        let mut sum = TrigPoly::zero(2);
        for (j, fj) in layers(&f) {
            assert_eq!(fj, layer(&f, j));
            sum = sum.add(&fj).unwrap();
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn band_blocks_match_direct_multiplier() {
        let q = FreqSet::hyperbolic_cross(5, 2).unwrap();
        let f = random_on(&q, 2);
        let blocks = band_blocks(&f);
        for s1 in 0..8 {
            for s2 in 0..8 {
                let s = MultiIndex::from([s1, s2]);
                let direct = a_block(&f, &s);
                match blocks.get(&s) {
                    Some(b) => assert!(b.sub(&direct).unwrap().max_abs_coeff() < 1e-15),
                    None => assert!(direct.is_zero(), "missing block {s}"),
                }
            }
        }
    }
}
