use num_complex::Complex64;

use crate::spectral::{GridFn, MultiIndex, TrigPoly};
use crate::{Error, Result};

/// `Π_{j∈e} (e^{i k_j t_j} - 1)^l`: the symbol of the forward mixed
/// difference `Δ_t^l(e)`.
pub fn difference_multiplier(k: &MultiIndex, axes: &[usize], steps: &[f64], l: u32) -> Complex64 {
    let mut m = Complex64::new(1.0, 0.0);
    for &j in axes {
        let base = Complex64::from_polar(1.0, k[j] as f64 * steps[j]) - 1.0;
        m *= base.powu(l);
    }
    m
}

fn validate(d: usize, axes: &[usize], steps: &[f64], l: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidArgument("difference order must be ≥ 1".into()));
    }
    if steps.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: steps.len(),
        });
    }
    if let Some(&j) = axes.iter().find(|&&j| j >= d) {
        return Err(Error::InvalidArgument(format!("axis {j} out of range for d = {d}")));
    }
    Ok(())
}

/// Mixed `l`-th difference of a polynomial along the axes `e`, computed
/// spectrally; `e = ∅` is the identity.
pub fn mixed_difference(f: &TrigPoly, axes: &[usize], steps: &[f64], l: u32) -> Result<TrigPoly> {
    validate(f.dim(), axes, steps, l)?;
    if axes.is_empty() {
        return Ok(f.clone());
    }
    Ok(f.multiply(|k| difference_multiplier(k, axes, steps, l)))
}

/// Grid version: analyze, apply the difference symbol, re-synthesize on the
/// same grid. The aliasing flag is propagated.
pub fn mixed_difference_grid(g: &GridFn, axes: &[usize], steps: &[f64], l: u32) -> Result<GridFn> {
    validate(g.dim(), axes, steps, l)?;
    if axes.is_empty() {
        return Ok(g.clone());
    }
    let analysis = g.analyze();
    let diff = mixed_difference(&analysis.poly, axes, steps, l)?;
    let out = GridFn::synthesize(&diff, g.dims())?;
    let aliased = out.is_aliased() || analysis.aliased;
    Ok(out.with_aliased(aliased))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::lp_norm;
    use std::f64::consts::PI;

    #[test]
    fn single_frequency_modulus() {
        let f = TrigPoly::monomial(MultiIndex::from([1]), Complex64::new(1.0, 0.0));
        for t in [0.1, 0.7, PI / 3.0, 2.5] {
            let diff = mixed_difference(&f, &[0], &[t], 1).unwrap();
            let expected = 2.0 * (t / 2.0).sin().abs();
            for p in [1.0, 2.0, 3.0] {
                assert!((lp_norm(&diff, p).unwrap() - expected).abs() < 1e-9, "p={p} t={t}");
            }
        }
    }

    #[test]
    fn empty_axis_set_is_identity_and_constants_vanish() {
        let f = TrigPoly::from_terms(
            2,
            [
                (MultiIndex::from([1, 2]), Complex64::new(0.5, 0.1)),
                (MultiIndex::from([0, 0]), Complex64::new(2.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(mixed_difference(&f, &[], &[0.3, 0.4], 2).unwrap(), f);
        let constant = TrigPoly::constant(2, Complex64::new(3.0, 0.0));
        assert!(mixed_difference(&constant, &[0, 1], &[0.3, 0.4], 1).unwrap().is_zero());
        assert!(mixed_difference(&constant, &[1], &[0.3, 0.4], 0).is_err());
    }

    #[test]
    fn grid_difference_matches_shift_formula() {
        let f = TrigPoly::from_terms(
            1,
            [
                (MultiIndex::from([2]), Complex64::new(1.0, 0.0)),
                (MultiIndex::from([-3]), Complex64::new(0.0, 0.5)),
            ],
        )
        .unwrap();
        let t = 0.4;
        let g = GridFn::synthesize(&f, &[16]).unwrap();
        let dg = mixed_difference_grid(&g, &[0], &[t], 2).unwrap();
        for flat in [0usize, 3, 11] {
            let x = g.point(flat)[0];
            let direct = f.evaluate(&[x + 2.0 * t]).unwrap() - f.evaluate(&[x + t]).unwrap() * 2.0
                + f.evaluate(&[x]).unwrap();
            assert!((dg.values()[flat] - direct).norm() < 1e-12);
        }
    }
}
