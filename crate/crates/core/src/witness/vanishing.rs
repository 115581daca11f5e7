use faer::{c64, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::linalg::NullSpace;
use super::{mix_seed, VANISHING_TOLERANCE};
use crate::decomposition::{budget_oversample, sup_norm, SupEstimate};
use crate::spectral::{oversampled_dims, FreqSet, GridFn, MultiIndex, PointSet, TrigPoly};
use crate::{Complex64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingOptions {
    pub seed: u64,
    /// Null-space basis vectors screened as candidates.
    pub basis_candidates: usize,
    /// Seeded random unit combinations of the whole null space.
    pub random_candidates: usize,
    /// Grid factor used to rank candidates.
    pub screen_oversample: usize,
    /// Grid factor of the normalizing sup estimate.
    pub refine_oversample: usize,
}

impl Default for VanishingOptions {
    fn default() -> Self {
        VanishingOptions {
            seed: 0,
            basis_candidates: 32,
            random_candidates: 32,
            screen_oversample: 2,
            refine_oversample: 16,
        }
    }
}

/// A polynomial on a frequency set that vanishes on a point set, normalized
/// to unit sup norm.
#[derive(Clone, Debug)]
pub struct VanishingPoly {
    pub g: TrigPoly,
    pub set: FreqSet,
    /// `x*`: the polished argmax of `|g|`.
    pub x_star: Vec<f64>,
    /// Sup estimate of the normalized `g`; `value()` is 1.
    pub sup: SupEstimate,
    /// Oversampling factor actually used for `sup`.
    pub sup_oversample: usize,
    /// `(polished - grid max) / polished` before normalization.
    pub sup_slack: f64,
    /// `max_ν |g(ξ^ν)|`.
    pub residual: f64,
    pub null_dim: usize,
    pub pivot_ratio: f64,
    pub ill_conditioned: bool,
}

/// `g ∈ T(ρ(s))` with `g(ξ^ν) = 0` and `‖g‖_∞ = 1`.
pub fn vanishing_poly(xi: &PointSet, s: &MultiIndex, opts: &VanishingOptions) -> Result<VanishingPoly> {
    if s.dim() != xi.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            found: s.dim(),
        });
    }
    let set = FreqSet::rho(s.as_slice())?;
    let opts = VanishingOptions {
        seed: mix_seed(opts.seed, s.as_slice()),
        ..opts.clone()
    };
    vanishing_on(xi, &set, &opts)
}

/// Per-axis tables `e^{-i k x_j}` for `k ∈ [-deg_j, deg_j]`.
fn conj_phases(set: &FreqSet, x: &[f64]) -> Vec<Vec<Complex64>> {
    set.max_abs()
        .iter()
        .zip(x)
        .map(|(&deg, &xj)| {
            let deg = deg as i64;
            (-deg..=deg)
                .map(|k| Complex64::from_polar(1.0, -(k as f64) * xj))
                .collect()
        })
        .collect()
}

/// `g` with support in `set`, vanishing on `xi`, selected for large sup norm.
pub fn vanishing_on(xi: &PointSet, set: &FreqSet, opts: &VanishingOptions) -> Result<VanishingPoly> {
    let (n, m, d) = (set.len(), xi.len(), set.dim());
    if xi.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: xi.dim(),
        });
    }
    if m >= n {
        return Err(Error::Infeasible(format!(
            "{m} points leave no vanishing polynomial on {n} frequencies"
        )));
    }
    let degrees = set.max_abs();
    let mut adjoint = Mat::<c64>::zeros(n, m);
    for (nu, x) in xi.points().iter().enumerate() {
        let tables = conj_phases(set, x);
        let mut col = adjoint.col_mut(nu);
        for (row, k) in set.iter().enumerate() {
            let mut v = Complex64::new(1.0, 0.0);
            for (j, &kj) in k.as_slice().iter().enumerate() {
                v *= tables[j][(kj + degrees[j] as i64) as usize];
            }
            col[row] = v;
        }
    }
    let ns = NullSpace::from_adjoint(adjoint.as_ref())?;
    drop(adjoint);

    let dim = ns.dim();
    let nb = opts.basis_candidates.min(dim);
    let nr = opts.random_candidates;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut coords = Mat::<c64>::zeros(dim, nb + nr);
    for j in 0..nb {
        coords[(j, j)] = c64::new(1.0, 0.0);
    }
    for j in nb..nb + nr {
        let mut norm = 0.0;
        for i in 0..dim {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            coords[(i, j)] = c64::new(re, im);
            norm += re * re + im * im;
        }
        let inv = 1.0 / norm.sqrt();
        for i in 0..dim {
            coords[(i, j)] *= inv;
        }
    }
    let candidates = ns.embed(coords.as_ref());

    let as_poly = |col: usize| -> TrigPoly {
        TrigPoly::from_terms(
            d,
            set.iter()
                .enumerate()
                .map(|(row, k)| (k.clone(), candidates[(row, col)])),
        )
        .expect("dimension checked")
    };
    let screen_dims = oversampled_dims(&degrees, opts.screen_oversample);
    let mut best = (f64::NEG_INFINITY, 0usize);
    for col in 0..candidates.ncols() {
        let value = GridFn::synthesize(&as_poly(col), &screen_dims)?.max_abs().0;
        if value > best.0 {
            best = (value, col);
        }
    }
    let raw = as_poly(best.1);
    let sup_oversample = budget_oversample(&degrees, opts.refine_oversample);
    let est = sup_norm(&raw, sup_oversample)?;
    let scale = est.value();
    if !(scale > 0.0) {
        return Err(Error::Solver("selected null-space vector vanishes identically".into()));
    }
    let g = raw.scale(Complex64::new(1.0 / scale, 0.0));
    let sup = SupEstimate {
        grid_max: est.grid_max / scale,
        grid_argmax: est.grid_argmax.clone(),
        polished: est.polished / scale,
        polished_at: est.polished_at.clone(),
    };
    let residual = g
        .evaluate_many(xi.points())?
        .iter()
        .fold(0.0f64, |a, v| a.max(v.norm()));
    if residual > VANISHING_TOLERANCE {
        return Err(Error::InvalidWitness {
            residual,
            tolerance: VANISHING_TOLERANCE,
        });
    }
    Ok(VanishingPoly {
        x_star: sup.polished_at.clone(),
        sup_slack: (est.polished - est.grid_max).max(0.0) / scale,
        g,
        set: set.clone(),
        sup,
        sup_oversample,
        residual,
        null_dim: dim,
        pivot_ratio: ns.pivot_ratio,
        ill_conditioned: ns.ill_conditioned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sine_on_first_block() {
        let xi = PointSet::new(1, vec![vec![0.0]]).unwrap();
        let v = vanishing_poly(&xi, &MultiIndex::from([1]), &VanishingOptions::default()).unwrap();
        assert_eq!(v.null_dim, 1);
        let c1 = v.g.coeff(&MultiIndex::from([1]));
        let cm1 = v.g.coeff(&MultiIndex::from([-1]));
        assert!((c1 + cm1).norm() < 1e-14);
        assert!((c1.norm() - 0.5).abs() < 1e-12);
        assert!((v.x_star[0] - FRAC_PI_2).abs() < 1e-6);
        assert!((v.sup.value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_point_set_gives_unit_sup() {
        let xi = PointSet::empty(2).unwrap();
        let v = vanishing_poly(&xi, &MultiIndex::from([2, 1]), &VanishingOptions::default()).unwrap();
        assert_eq!(v.null_dim, 8);
        assert_eq!(v.residual, 0.0);
        assert!((v.sup.value() - 1.0).abs() < 1e-12);
        assert!(v.g.support().iter().all(|k| FreqSet::rho(&[2, 1]).unwrap().contains(k)));
    }

    #[test]
    fn two_points_on_second_block() {
        let xi = PointSet::new(1, vec![vec![0.0], vec![PI]]).unwrap();
        let v = vanishing_poly(&xi, &MultiIndex::from([2]), &VanishingOptions::default()).unwrap();
        assert_eq!(v.null_dim, 2);
        for x in [0.0, PI] {
            assert!(v.g.evaluate(&[x]).unwrap().norm() < 1e-9);
        }
    }

    #[test]
    fn too_many_points_is_infeasible() {
        let xi = PointSet::uniform_random(4, 1, 0).unwrap();
        assert!(matches!(
            vanishing_poly(&xi, &MultiIndex::from([2]), &VanishingOptions::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn random_points_in_two_dimensions() {
        let xi = PointSet::uniform_random(32, 2, 5).unwrap();
        let s = MultiIndex::from([3, 3]);
        let v = vanishing_poly(&xi, &s, &VanishingOptions::default()).unwrap();
        assert!(v.residual < 1e-12);
        assert!(!v.ill_conditioned);
        let again = vanishing_poly(&xi, &s, &VanishingOptions::default()).unwrap();
        assert_eq!(v.g, again.g);
    }
}
