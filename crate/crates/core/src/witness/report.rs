use std::fmt;

use super::fooling::{product, FoolingFunction};
use super::vanishing::{vanishing_on, VanishingOptions};
use super::VANISHING_TOLERANCE;
use crate::classes::{scale_into, ClassSpec, HrqMode};
use crate::decomposition::{budget_oversample, lp_norm_detailed, sup_norm, DEFAULT_OVERSAMPLE};
use crate::kernels::fejer_multi;
use crate::spectral::{box_cardinality, FreqSet, PointSet, TrigPoly};
use crate::{Complex64, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Sum of vanishing block polynomials times shifted Fejér kernels.
    Fooling,
    /// A single vanishing box polynomial times a shifted Fejér kernel.
    Box,
    /// A function supplied by the caller.
    External,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Fooling => "fooling",
            Construction::Box => "box",
            Construction::External => "external",
        })
    }
}

/// Norms and ratios certifying a lower bound for one point set.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub construction: Construction,
    pub d: usize,
    pub n: u32,
    pub m: usize,
    pub class: ClassSpec,
    pub p: f64,
    /// `‖f‖_p`.
    pub norm_p: f64,
    /// The class gauge of `f`: `max_u ‖A_u(f)‖_q` for `H^r_q`, `1/λ` otherwise.
    pub gauge: f64,
    /// `‖f‖_p / gauge`: the witness value at the scale of the construction.
    pub value: f64,
    /// Largest `λ` with `λ f` in the class.
    pub class_scale: f64,
    /// `‖λ f‖_p`: the certified lower-bound value for the class.
    pub class_value: f64,
    /// Growth term predicted for `value`.
    pub predicted_term: f64,
    /// `value / predicted_term`.
    pub ratio: f64,
    /// `max_ν |f(ξ^ν)| / ‖f‖_∞`.
    pub vanishing_residual: f64,
    pub warnings: Vec<String>,
}

fn q_norm(f: &TrigPoly, q: f64, oversample: usize) -> Result<f64> {
    let factor = budget_oversample(&f.degrees(), oversample);
    if q.is_infinite() {
        Ok(sup_norm(f, factor)?.value())
    } else {
        Ok(lp_norm_detailed(f, q, factor)?.value)
    }
}

/// Predicted growth of the witness value for `class` at level `n` with `m`
/// points.
pub fn predicted_term(class: ClassSpec, d: usize, n: u32, m: usize, p: f64) -> f64 {
    let nf = n as f64;
    let m = if m >= 2 { m as f64 } else { (nf - 1.0).exp2().max(2.0) };
    let dm1 = d as f64 - 1.0;
    match class {
        ClassSpec::Hrq { q, .. } => (nf * (1.0 / q - 1.0 / p)).exp2() * nf.powf(dm1 / p),
        ClassSpec::Wrq { r, q } => m.powf(-r + 1.0 / q - 1.0 / p),
        ClassSpec::HabA { a, b, beta } | ClassSpec::WabA { a, b, beta } => {
            m.powf(1.0 - 1.0 / p - 1.0 / beta - a) * m.ln().powf(dm1 * (b + 1.0 / p))
        }
    }
}

fn vanishing_residual(f: &TrigPoly, xi: &PointSet, sup: f64) -> Result<f64> {
    if xi.is_empty() || f.is_zero() {
        return Ok(0.0);
    }
    let worst = f
        .evaluate_many(xi.points())?
        .iter()
        .fold(0.0f64, |a, v| a.max(v.norm()));
    Ok(worst / sup)
}

/// Scales `f` into `class` and reports `‖λ f‖_p` against the predicted
/// growth term. `f` must vanish on `xi`.
pub fn evaluate_witness(
    f: &TrigPoly,
    xi: &PointSet,
    class: ClassSpec,
    p: f64,
    n: u32,
    oversample: usize,
) -> Result<WitnessReport> {
    class.validate()?;
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::InvalidArgument(format!("target exponent p = {p} must lie in [1, ∞)")));
    }
    let d = f.dim();
    let predicted = predicted_term(class, d, n, xi.len(), p);
    let mut report = WitnessReport {
        construction: Construction::External,
        d,
        n,
        m: xi.len(),
        class,
        p,
        norm_p: 0.0,
        gauge: 0.0,
        value: 0.0,
        class_scale: f64::INFINITY,
        class_value: 0.0,
        predicted_term: predicted,
        ratio: 0.0,
        vanishing_residual: 0.0,
        warnings: Vec::new(),
    };
    if f.is_zero() {
        return Ok(report);
    }
    let sup = sup_norm(f, budget_oversample(&f.degrees(), oversample))?.value();
    report.vanishing_residual = vanishing_residual(f, xi, sup)?;
    if report.vanishing_residual > VANISHING_TOLERANCE {
        return Err(Error::InvalidWitness {
            residual: report.vanishing_residual,
            tolerance: VANISHING_TOLERANCE,
        });
    }
    report.norm_p = q_norm(f, p, oversample)?;
    let membership = scale_into(f, class, HrqMode::Proxy, oversample)?;
    report.class_scale = membership.scale;
    report.class_value = membership.scale * report.norm_p;
    report.gauge = match class {
        ClassSpec::Hrq { .. } => membership
            .constraints
            .iter()
            .map(|c| c.measured)
            .fold(0.0, f64::max),
        _ => 1.0 / membership.scale,
    };
    report.value = report.norm_p / report.gauge;
    report.ratio = report.value / predicted;
    report.warnings = membership.warnings;
    Ok(report)
}

/// [`evaluate_witness`] on the output of `fooling_function`.
pub fn fooling_report(ff: &FoolingFunction, class: ClassSpec, p: f64, oversample: usize) -> Result<WitnessReport> {
    let mut rep = evaluate_witness(&ff.f, &ff.points, class, p, ff.n, oversample)?;
    rep.construction = Construction::Fooling;
    rep.warnings.extend(ff.warnings.iter().cloned());
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct BoxWitness {
    /// `h` in the unit `L_q` ball of `T(2N)`, vanishing on `ξ`.
    pub h: TrigPoly,
    pub box_size: u64,
    pub q: f64,
    pub p: f64,
    pub value: f64,
    /// `ϑ(N)^{1/q - 1/p}`.
    pub predicted_term: f64,
    pub ratio: f64,
    pub vanishing_residual: f64,
}

/// Vanishing polynomial on the box `Π(N)` times `K_{N+1}(· - x*)`,
/// normalized in `L_q`.
pub fn box_witness(xi: &PointSet, n_box: &[u32], q: f64, p: f64, opts: &VanishingOptions) -> Result<BoxWitness> {
    if !(q >= 1.0) || !(p >= 1.0) || p.is_infinite() {
        return Err(Error::InvalidArgument(format!("need q ≥ 1 and 1 ≤ p < ∞, got q = {q}, p = {p}")));
    }
    let box_size = box_cardinality(n_box);
    if 2 * xi.len() as u64 > box_size {
        return Err(Error::Infeasible(format!(
            "m = {} exceeds ϑ(N)/2 = {}",
            xi.len(),
            box_size / 2
        )));
    }
    let set = FreqSet::boxed(n_box)?;
    let v = vanishing_on(xi, &set, opts)?;
    let orders: Vec<u64> = n_box.iter().map(|&x| x as u64 + 1).collect();
    let t = product(&v.g, &fejer_multi(&orders)?.shift(&v.x_star))?;
    let tq = q_norm(&t, q, DEFAULT_OVERSAMPLE)?;
    let h = t.scale(Complex64::new(1.0 / tq, 0.0));
    let value = q_norm(&h, p, DEFAULT_OVERSAMPLE)?;
    let sup = sup_norm(&h, budget_oversample(&h.degrees(), DEFAULT_OVERSAMPLE))?.value();
    let predicted = (box_size as f64).powf(1.0 / q - 1.0 / p);
    Ok(BoxWitness {
        vanishing_residual: vanishing_residual(&h, xi, sup)?,
        h,
        box_size,
        q,
        p,
        value,
        predicted_term: predicted,
        ratio: value / predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::MultiIndex;
    use crate::witness::{fooling_function, scale_fooling, FoolingOptions};

    #[test]
    fn zero_function_has_zero_value() {
        let xi = PointSet::uniform_random(4, 2, 0).unwrap();
        let rep = evaluate_witness(&TrigPoly::zero(2), &xi, ClassSpec::Hrq { r: 1.0, q: 2.0 }, 2.0, 6, 8).unwrap();
        assert_eq!(rep.value, 0.0);
    }

    #[test]
    fn non_vanishing_function_is_rejected() {
        let xi = PointSet::new(1, vec![vec![0.0]]).unwrap();
        let f = TrigPoly::monomial(MultiIndex::from([1]), Complex64::new(1.0, 0.0));
        assert!(matches!(
            evaluate_witness(&f, &xi, ClassSpec::Hrq { r: 1.0, q: 2.0 }, 2.0, 3, 8),
            Err(Error::InvalidWitness { .. })
        ));
    }

    #[test]
    fn ratios_are_scale_invariant() {
        let xi = PointSet::uniform_random(8, 2, 1).unwrap();
        let ff = fooling_function(&xi, 6, &FoolingOptions::default()).unwrap();
        let class = ClassSpec::Hrq { r: 1.5, q: 1.0 };
        let a = fooling_report(&ff, class, 2.0, 8).unwrap();
        let b = fooling_report(&scale_fooling(&ff, 3.7), class, 2.0, 8).unwrap();
        assert!((a.value - b.value).abs() <= 1e-12 * a.value);
        assert!((a.class_value - b.class_value).abs() <= 1e-12 * a.class_value);
        assert!(a.value > 0.0 && a.ratio > 0.0);
    }

    #[test]
    fn box_witness_small_cases() {
        let xi = PointSet::new(1, vec![vec![0.0]]).unwrap();
        let w = box_witness(&xi, &[1], 2.0, 2.0, &VanishingOptions::default()).unwrap();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert_eq!(w.predicted_term, 1.0);
        assert!(w.vanishing_residual < 1e-12);
        let xi = PointSet::uniform_random(20, 2, 3).unwrap();
        let w = box_witness(&xi, &[3, 3], 1.0, 2.0, &VanishingOptions::default()).unwrap();
        assert!(w.value > 1.0 && w.vanishing_residual < 1e-9);
        assert!(w.h.degrees().iter().all(|&v| v <= 6));
    }
}
