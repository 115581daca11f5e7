use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::vanishing::{vanishing_poly, VanishingOptions, VanishingPoly};
use super::VANISHING_TOLERANCE;
use crate::decomposition::{band_blocks, budget_oversample, dyadic_blocks, sup_norm, SupEstimate, DEFAULT_OVERSAMPLE};
use crate::kernels::fejer_multi;
use crate::spectral::{build_y, frequency_level, nyquist_dims, GridFn, MultiIndex, PointSet, TrigPoly};
use crate::{Complex64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FoolingOptions {
    pub vanishing: VanishingOptions,
    /// Requested grid factor for sup norms of the assembled function.
    pub oversample: usize,
}

impl Default for FoolingOptions {
    fn default() -> Self {
        FoolingOptions {
            vanishing: VanishingOptions::default(),
            oversample: DEFAULT_OVERSAMPLE,
        }
    }
}

impl FoolingOptions {
    pub fn with_seed(seed: u64) -> Self {
        FoolingOptions {
            vanishing: VanishingOptions {
                seed,
                ..VanishingOptions::default()
            },
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct FoolingBlock {
    pub level: MultiIndex,
    pub vanishing: VanishingPoly,
    /// `t_s = g_{ξ,s} · K_{2^{s-2}}(· - x*)`.
    pub t: TrigPoly,
    /// `|t_s(x*)|`.
    pub peak: f64,
    /// `|t_s(x*)| / 2^n`.
    pub peak_ratio: f64,
    /// Sup estimate of `t_s`.
    pub sup: f64,
    /// Dyadic block `u` maximizing `‖δ_u(t_s)‖_∞`.
    pub dominant_block: MultiIndex,
    /// `max_u ‖δ_u(t_s)‖_∞ / ‖t_s‖_∞`.
    pub dominant_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct FoolingFunction {
    pub n: u32,
    pub points: PointSet,
    pub f: TrigPoly,
    pub blocks: Vec<FoolingBlock>,
    pub sup: SupEstimate,
    /// `max_ν |f(ξ^ν)| / ‖f‖_∞`.
    pub vanishing_residual: f64,
    /// Every frequency of `f` lies in `Q_{n+d}`.
    pub support_in_cross: bool,
    /// Largest `‖u‖₁` with `A_u(f) ≠ 0`.
    pub max_band_level: i64,
    /// Each dyadic block of `f` meets the support of exactly one `t_s`.
    pub blocks_unique: bool,
    pub warnings: Vec<String>,
}

impl FoolingFunction {
    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// Band cutoff: `A_u(f) = 0` whenever `‖u‖₁ > n + 3d`.
    pub fn cutoff_holds(&self) -> bool {
        self.max_band_level <= (self.n as usize + 3 * self.dim()) as i64
    }
}

/// Exact product of two polynomials through a non-aliasing grid. The result
/// is restricted to the per-axis sum of the factors' frequency ranges.
pub fn product(a: &TrigPoly, b: &TrigPoly) -> Result<TrigPoly> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.is_zero() || b.is_zero() {
        return Ok(TrigPoly::zero(a.dim()));
    }
    let d = a.dim();
    let axis_sets = |p: &TrigPoly| -> Vec<BTreeSet<i64>> {
        let mut sets = vec![BTreeSet::new(); d];
        for (k, _) in p.terms() {
            for (j, &v) in k.as_slice().iter().enumerate() {
                sets[j].insert(v);
            }
        }
        sets
    };
    let (sa, sb) = (axis_sets(a), axis_sets(b));
    let allowed: Vec<BTreeSet<i64>> = sa
        .iter()
        .zip(&sb)
        .map(|(x, y)| x.iter().flat_map(|&u| y.iter().map(move |&v| u + v)).collect())
        .collect();
    let degrees: Vec<u64> = a.degrees().iter().zip(b.degrees()).map(|(x, y)| x + y).collect();
    let dims = nyquist_dims(&degrees);
    let ga = GridFn::synthesize(a, &dims)?;
    let gb = GridFn::synthesize(b, &dims)?;
    let prod = ga.pointwise_mul(&gb)?.analyze().poly;
    Ok(prod.restrict(|k| k.as_slice().iter().zip(&allowed).all(|(v, set)| set.contains(v))))
}

fn fejer_orders(s: &MultiIndex) -> Vec<u64> {
    s.as_slice().iter().map(|&v| 1u64 << (v - 2)).collect()
}

fn build_block(xi: &PointSet, s: &MultiIndex, n: u32, opts: &FoolingOptions) -> Result<FoolingBlock> {
    let vanishing = vanishing_poly(xi, s, &opts.vanishing)?;
    let kernel = fejer_multi(&fejer_orders(s))?.shift(&vanishing.x_star);
    let t = product(&vanishing.g, &kernel)?;
    let peak = t.evaluate(&vanishing.x_star)?.norm();
    let sup = sup_norm(&t, budget_oversample(&t.degrees(), opts.oversample))?.value();
    let mut dominant = (MultiIndex::zeros(s.dim()), 0.0);
    for (u, block) in dyadic_blocks(&t) {
        let v = sup_norm(&block, budget_oversample(&block.degrees(), opts.oversample))?.value();
        if v > dominant.1 {
            dominant = (u, v);
        }
    }
    Ok(FoolingBlock {
        level: s.clone(),
        peak,
        peak_ratio: peak / (n as f64).exp2(),
        sup,
        dominant_block: dominant.0,
        dominant_ratio: if sup > 0.0 { dominant.1 / sup } else { 0.0 },
        vanishing,
        t,
    })
}

/// `f = Σ_{s ∈ Y_{n,3}} g_{ξ,s} · K_{2^{s-2}}(· - x_s*)`, vanishing on `ξ`.
pub fn fooling_function(xi: &PointSet, n: u32, opts: &FoolingOptions) -> Result<FoolingFunction> {
    let d = xi.dim();
    let y = build_y(n, d);
    if let Some(w) = y.warning {
        return Err(Error::Infeasible(w));
    }
    let m = xi.len();
    let half = 1usize << (n - 1);
    if m > half {
        return Err(Error::Infeasible(format!(
            "m = {m} exceeds 2^n / 2 = {half}"
        )));
    }
    let blocks: Vec<FoolingBlock> = y
        .levels
        .par_iter()
        .map(|s| build_block(xi, s, n, opts))
        .collect::<Result<_>>()?;

    let mut f = TrigPoly::zero(d);
    for b in &blocks {
        f = f.add(&b.t)?;
    }

    let mut warnings = Vec::new();
    for b in &blocks {
        if b.vanishing.ill_conditioned {
            warnings.push(format!(
                "block {}: evaluation matrix ill-conditioned (pivot ratio {:.1e})",
                b.level, b.vanishing.pivot_ratio
            ));
        }
    }

    let limit = (n as usize + d) as i64;
    let support_in_cross = f
        .terms()
        .all(|(k, _)| frequency_level(k).l1() <= limit);

    let mut owners: BTreeMap<MultiIndex, BTreeSet<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for (k, _) in b.t.terms() {
            owners.entry(frequency_level(k)).or_default().insert(i);
        }
    }
    let blocks_unique = owners.values().all(|s| s.len() == 1);

    let max_band_level = band_blocks(&f).keys().map(|u| u.l1()).max().unwrap_or(0);

    let sup = sup_norm(&f, budget_oversample(&f.degrees(), opts.oversample))?;
    let scale = sup.value();
    let vanishing_residual = if f.is_zero() || m == 0 {
        0.0
    } else {
        f.evaluate_many(xi.points())?
            .iter()
            .fold(0.0f64, |a, v| a.max(v.norm()))
            / scale
    };
    if vanishing_residual > VANISHING_TOLERANCE {
        return Err(Error::InvalidWitness {
            residual: vanishing_residual,
            tolerance: VANISHING_TOLERANCE,
        });
    }
    Ok(FoolingFunction {
        n,
        points: xi.clone(),
        f,
        blocks,
        sup,
        vanishing_residual,
        support_in_cross,
        max_band_level,
        blocks_unique,
        warnings,
    })
}

/// `c · f` with every per-block record rescaled alike.
pub fn scale_fooling(ff: &FoolingFunction, c: f64) -> FoolingFunction {
    let z = Complex64::new(c, 0.0);
    let mut out = ff.clone();
    out.f = ff.f.scale(z);
    out.sup.grid_max *= c.abs();
    out.sup.polished *= c.abs();
    for b in &mut out.blocks {
        b.t = b.t.scale(z);
        b.peak *= c.abs();
        b.peak_ratio *= c.abs();
        b.sup *= c.abs();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::fejer_value_multi;
    use crate::spectral::FreqSet;

    #[test]
    fn product_is_exact() {
        let a = TrigPoly::from_terms(
            1,
            [
                (MultiIndex::from([2]), Complex64::new(1.0, 0.5)),
                (MultiIndex::from([-3]), Complex64::new(0.0, 2.0)),
            ],
        )
        .unwrap();
        let b = fejer_multi(&[2]).unwrap();
        let p = product(&a, &b).unwrap();
        for x in [0.1, 1.7, 4.0] {
            let want = a.evaluate(&[x]).unwrap() * fejer_value_multi(&[2], &[x]);
            assert!((p.evaluate(&[x]).unwrap() - want).norm() < 1e-13);
        }
        let support: Vec<i64> = p.support().iter().map(|k| k[0]).collect();
        assert_eq!(support, vec![-4, -3, -2, 1, 2, 3]);
    }

    #[test]
    fn single_block_in_one_dimension() {
        let ff = fooling_function(&PointSet::empty(1).unwrap(), 3, &FoolingOptions::default()).unwrap();
        assert_eq!(ff.blocks.len(), 1);
        assert!((ff.blocks[0].peak - 2.0).abs() < 1e-9);
        assert!(ff.support_in_cross && ff.blocks_unique && ff.cutoff_holds());
    }

    #[test]
    fn two_dimensional_witness() {
        let xi = PointSet::uniform_random(8, 2, 0).unwrap();
        let ff = fooling_function(&xi, 6, &FoolingOptions::default()).unwrap();
        assert_eq!(ff.blocks.len(), 1);
        assert!(ff.vanishing_residual < 1e-12);
        assert!(ff.support_in_cross && ff.blocks_unique && ff.cutoff_holds());
        let q8 = FreqSet::hyperbolic_cross(8, 2).unwrap();
        assert!(ff.f.terms().all(|(k, _)| q8.contains(k)));
        assert!(ff.blocks[0].dominant_ratio > 0.0 && ff.blocks[0].dominant_ratio <= 1.0 + 1e-9);
    }

    #[test]
    fn preconditions() {
        let xi = PointSet::empty(2).unwrap();
        assert!(matches!(fooling_function(&xi, 7, &FoolingOptions::default()), Err(Error::Infeasible(_))));
        assert!(matches!(fooling_function(&xi, 3, &FoolingOptions::default()), Err(Error::Infeasible(_))));
        let many = PointSet::uniform_random(33, 2, 0).unwrap();
        assert!(matches!(fooling_function(&many, 6, &FoolingOptions::default()), Err(Error::Infeasible(_))));
    }
}
