//! Membership normalizers: for a trigonometric polynomial `f` and a
//! smoothness class `F`, the largest `λ ≥ 0` with `λ f ∈ F`.
//!
//! Class constants are normalized to 1, so every scale is meaningful only up
//! to a multiplicative constant depending on the class parameters and `d`.
//! Rate experiments compare exponents, never constants.

use std::fmt;

use num_complex::Complex64;

use crate::decomposition::{
    a_beta_norm, a_norm, band_blocks, budget_oversample, dyadic_blocks, layers, lp_norm_detailed, mixed_difference,
    sup_norm, DEFAULT_OVERSAMPLE,
};
use crate::kernels::bernoulli_multiplier;
use crate::spectral::TrigPoly;
use crate::{Error, Result};

/// Number of dyadic step sizes `2π·2^{-i}`, `i = 0..=LADDER_LEVELS`, sampled per
/// axis by the direct `H^r_q` normalizer.
pub const LADDER_LEVELS: u32 = 8;

/// Below this value of `Π|t_j|^r` a sup-norm difference ratio is flagged as
/// numerically unstable.
pub const UNSTABLE_STEP_PRODUCT: f64 = 1e-12;

/// A uniformly bounded orthonormal system in which classes are expressed.
/// Only the trigonometric system is implemented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum System {
    #[default]
    Trigonometric,
}

impl System {
    /// `B` with `‖ψ_k‖_∞ ≤ B`.
    pub fn uniform_bound(self) -> f64 {
        match self {
            System::Trigonometric => 1.0,
        }
    }
}

/// A smoothness class and its parameters. `q = ∞` is accepted only by
/// `Hrq`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassSpec {
    /// `W^r_q = {φ * F_r : ‖φ‖_q ≤ 1}`.
    Wrq { r: f64, q: f64 },
    /// `H^r_q`, mixed differences of order `l = [r] + 1`.
    Hrq { r: f64, q: f64 },
    /// `|f_j|_{A_β} ≤ 2^{-aj} j̄^{(d-1)b}` for every layer `j`.
    WabA { a: f64, b: f64, beta: f64 },
    /// `|δ_s(f)|_{A_β} ≤ 2^{-aj} j̄^{(d-1)b}` for every block with `‖s‖₁ = j`.
    HabA { a: f64, b: f64, beta: f64 },
}

impl ClassSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        match *self {
            ClassSpec::Wrq { r, q } if !(r > 0.0) || !(q >= 1.0) || q.is_infinite() => {
                bad(format!("W^r_q needs r > 0 and 1 ≤ q < ∞, got r = {r}, q = {q}"))
            }
            ClassSpec::Hrq { r, q } if !(r > 0.0) || !(q >= 1.0) => {
                bad(format!("H^r_q needs r > 0 and q ≥ 1, got r = {r}, q = {q}"))
            }
            ClassSpec::WabA { a, b, beta } | ClassSpec::HabA { a, b, beta }
                if !(a > 0.0) || !b.is_finite() || !(beta > 0.0 && beta <= 1.0) =>
            {
                bad(format!(
                    "A_beta classes need a > 0, finite b, 0 < beta ≤ 1; got a = {a}, b = {b}, beta = {beta}"
                ))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Wrq { r, q } => write!(f, "W^{r}_{q}"),
            ClassSpec::Hrq { r, q } => write!(f, "H^{r}_{q}"),
            ClassSpec::WabA { a, b, beta } => write!(f, "W^{{{a},{b}}}_A{beta}"),
            ClassSpec::HabA { a, b, beta } => write!(f, "H^{{{a},{b}}}_A{beta}"),
        }
    }
}

/// Which membership test produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// The class definition itself, computed exactly.
    Exact,
    /// Band-block characterization `‖A_s(f)‖_q ≤ 2^{-r‖s‖₁}`.
    Proxy,
    /// Sampled mixed differences over a dyadic step ladder.
    Direct,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HrqMode {
    #[default]
    Proxy,
    Direct,
}

/// One checked constraint `measured · λ ≤ allowed`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub measured: f64,
    pub allowed: f64,
}

impl Constraint {
    /// The largest scale this constraint admits.
    pub fn limit(&self) -> f64 {
        if self.measured > 0.0 {
            self.allowed / self.measured
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub class: ClassSpec,
    /// Largest admissible `λ`; `∞` when no constraint binds (e.g. `f = 0`).
    pub scale: f64,
    pub criterion: Criterion,
    pub constraints: Vec<Constraint>,
    /// Index into `constraints` of the binding one.
    pub binding: Option<usize>,
    /// Direct `H^r_q` mode: every difference with `e ≠ ∅` vanished, so only
    /// the `e = ∅` term caps the scale.
    pub differences_vanish: bool,
    pub warnings: Vec<String>,
}

impl MembershipReport {
    fn from_constraints(class: ClassSpec, criterion: Criterion, constraints: Vec<Constraint>) -> Self {
        let mut scale = f64::INFINITY;
        let mut binding = None;
        for (i, c) in constraints.iter().enumerate() {
            let l = c.limit();
            if l < scale {
                scale = l;
                binding = Some(i);
            }
        }
        MembershipReport {
            class,
            scale,
            criterion,
            constraints,
            binding,
            differences_vanish: false,
            warnings: Vec::new(),
        }
    }

    pub fn binding_constraint(&self) -> Option<&Constraint> {
        self.binding.map(|i| &self.constraints[i])
    }

    pub fn note(&self) -> &'static str {
        "scale is determined up to the class's unspecified constant"
    }
}

fn q_norm(f: &TrigPoly, q: f64, oversample: usize) -> Result<f64> {
    let oversample = budget_oversample(&f.degrees(), oversample);
    if q.is_infinite() {
        Ok(sup_norm(f, oversample)?.grid_max)
    } else {
        Ok(lp_norm_detailed(f, q, oversample)?.value)
    }
}

fn weight(a: f64, b: f64, j: i64, d: usize) -> f64 {
    let jbar = j.max(1) as f64;
    (-a * j as f64).exp2() * jbar.powf((d as f64 - 1.0) * b)
}

/// `φ` with `f = φ * F_r`: `φ̂(k) = f̂(k) / F̂_r(k)`.
pub fn wrq_potential(f: &TrigPoly, r: f64) -> TrigPoly {
    f.multiply(|k| 1.0 / bernoulli_multiplier(r, k))
}

/// `φ * F_r`.
pub fn wrq_reconstruct(phi: &TrigPoly, r: f64) -> TrigPoly {
    phi.multiply(|k| bernoulli_multiplier(r, k))
}

pub fn scale_into_wrq(f: &TrigPoly, r: f64, q: f64) -> Result<MembershipReport> {
    scale_into_wrq_with(f, r, q, DEFAULT_OVERSAMPLE)
}

pub fn scale_into_wrq_with(f: &TrigPoly, r: f64, q: f64, oversample: usize) -> Result<MembershipReport> {
    let class = ClassSpec::Wrq { r, q };
    class.validate()?;
    let phi = wrq_potential(f, r);
    let measured = q_norm(&phi, q, oversample)?;
    Ok(MembershipReport::from_constraints(
        class,
        Criterion::Exact,
        vec![Constraint {
            label: "‖φ‖_q".into(),
            measured,
            allowed: 1.0,
        }],
    ))
}

pub fn scale_into_hrq(f: &TrigPoly, r: f64, q: f64, mode: HrqMode) -> Result<MembershipReport> {
    scale_into_hrq_with(f, r, q, mode, DEFAULT_OVERSAMPLE)
}

pub fn scale_into_hrq_with(
    f: &TrigPoly,
    r: f64,
    q: f64,
    mode: HrqMode,
    oversample: usize,
) -> Result<MembershipReport> {
    let class = ClassSpec::Hrq { r, q };
    class.validate()?;
    match mode {
        HrqMode::Proxy => {
            let mut constraints = Vec::new();
            for (s, block) in band_blocks(f) {
                if block.is_zero() {
                    continue;
                }
                constraints.push(Constraint {
                    label: format!("A_{s}"),
                    measured: q_norm(&block, q, oversample)?,
                    allowed: (-r * s.l1() as f64).exp2(),
                });
            }
            Ok(MembershipReport::from_constraints(class, Criterion::Proxy, constraints))
        }
        HrqMode::Direct => hrq_direct(f, r, q, oversample),
    }
}

fn hrq_direct(f: &TrigPoly, r: f64, q: f64, oversample: usize) -> Result<MembershipReport> {
    let class = ClassSpec::Hrq { r, q };
    let d = f.dim();
    let l = r.floor() as u32 + 1;
    let ladder: Vec<f64> = (0..=LADDER_LEVELS)
        .map(|i| std::f64::consts::TAU * (-(i as f64)).exp2())
        .collect();
    let mut constraints = vec![Constraint {
        label: "e=∅".into(),
        measured: q_norm(f, q, oversample)?,
        allowed: 1.0,
    }];
    let mut warnings = Vec::new();
    let mut all_vanish = true;
    for mask in 1u32..(1 << d) {
        let axes: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
        let mut pick = vec![0usize; axes.len()];
        loop {
            let mut steps = vec![0.0; d];
            for (&j, &i) in axes.iter().zip(&pick) {
                steps[j] = ladder[i];
            }
            let allowed: f64 = axes.iter().map(|&j| steps[j].powf(r)).product();
            let diff = mixed_difference(f, &axes, &steps, l)?;
            let measured = if diff.is_zero() {
                0.0
            } else {
                q_norm(&diff, q, oversample)?
            };
            if measured > 0.0 {
                all_vanish = false;
                if q.is_infinite() && allowed < UNSTABLE_STEP_PRODUCT {
                    warnings.push(format!(
                        "unstable ratio: Π|t_j|^r = {allowed:.2e} on axes {axes:?}"
                    ));
                }
            }
            constraints.push(Constraint {
                label: format!("e={axes:?} t={:?}", pick),
                measured,
                allowed,
            });
            let mut k = pick.len();
            let mut done = true;
            while k > 0 {
                k -= 1;
                pick[k] += 1;
                if pick[k] < ladder.len() {
                    done = false;
                    break;
                }
                pick[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    let mut report = MembershipReport::from_constraints(class, Criterion::Direct, constraints);
    report.differences_vanish = all_vanish;
    report.warnings = warnings;
    Ok(report)
}

/// Normalizer for `W^{a,b}_{A_β}` (per layer) and `H^{a,b}_{A_β}` (per block).
pub fn scale_into_structural(f: &TrigPoly, class: ClassSpec) -> Result<MembershipReport> {
    class.validate()?;
    let d = f.dim();
    let constraints = match class {
        ClassSpec::WabA { a, b, beta } => layers(f)
            .into_iter()
            .map(|(j, fj)| {
                Ok(Constraint {
                    label: format!("f_{j}"),
                    measured: a_beta_norm(&fj, beta)?,
                    allowed: weight(a, b, j as i64, d),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        ClassSpec::HabA { a, b, beta } => dyadic_blocks(f)
            .into_iter()
            .map(|(s, block)| {
                Ok(Constraint {
                    label: format!("δ_{s}"),
                    measured: a_beta_norm(&block, beta)?,
                    allowed: weight(a, b, s.l1(), d),
                })
            })
            .collect::<Result<Vec<_>>>()?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other} is not a structural A_beta class"
            )))
        }
    };
    Ok(MembershipReport::from_constraints(class, Criterion::Exact, constraints))
}

/// Dispatches to the normalizer matching `class`.
pub fn scale_into(f: &TrigPoly, class: ClassSpec, mode: HrqMode, oversample: usize) -> Result<MembershipReport> {
    match class {
        ClassSpec::Wrq { r, q } => scale_into_wrq_with(f, r, q, oversample),
        ClassSpec::Hrq { r, q } => scale_into_hrq_with(f, r, q, mode, oversample),
        _ => scale_into_structural(f, class),
    }
}

/// Which inclusion of the embedding into `W^{a,b}_A` is being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingSource {
    /// `W^r_q ↪ W^{a,b}_A`, `a = r - 1/q`, `b = 1 - 1/q`, `1 < q ≤ 2`.
    Sobolev,
    /// `H^r_q ↪ W^{a,b}_A`, `a = r - 1/q`, `b = 1`, `1 ≤ q ≤ 2`.
    Holder,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingRow {
    pub layer: u32,
    pub a_norm: f64,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingReport {
    pub source: EmbeddingSource,
    pub scale: f64,
    pub a: f64,
    pub b: f64,
    pub rows: Vec<EmbeddingRow>,
    /// Empirical constant: `max_j ‖λ f_j‖_A / (2^{-aj} j̄^{(d-1)b})`.
    pub max_ratio: f64,
}

/// Scales `f` into `W^r_q` (or `H^r_q`, proxy criterion) and measures every
/// layer against the `W^{a,b}_A` envelope.
pub fn check_embedding(f: &TrigPoly, r: f64, q: f64, source: EmbeddingSource) -> Result<EmbeddingReport> {
    let (ok, b) = match source {
        EmbeddingSource::Sobolev => (q > 1.0 && q <= 2.0, 1.0 - 1.0 / q),
        EmbeddingSource::Holder => ((1.0..=2.0).contains(&q), 1.0),
    };
    if !ok {
        return Err(Error::UnsupportedRange(format!(
            "q = {q} is outside the embedding's range for {source:?}"
        )));
    }
    let a = r - 1.0 / q;
    let scale = match source {
        EmbeddingSource::Sobolev => scale_into_wrq(f, r, q)?.scale,
        EmbeddingSource::Holder => scale_into_hrq(f, r, q, HrqMode::Proxy)?.scale,
    };
    let d = f.dim();
    let mut rows = Vec::new();
    if scale.is_finite() {
        let scaled = f.scale(Complex64::new(scale, 0.0));
        for (j, fj) in layers(&scaled) {
            let a_norm = a_norm(&fj);
            let bound = weight(a, b, j as i64, d);
            rows.push(EmbeddingRow {
                layer: j,
                a_norm,
                bound,
                ratio: a_norm / bound,
            });
        }
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(EmbeddingReport {
        source,
        scale,
        a,
        b,
        rows,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelSpec;
    use crate::spectral::{FreqSet, MultiIndex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(k: &[i64]) -> TrigPoly {
        TrigPoly::monomial(MultiIndex::new(k.to_vec()), Complex64::new(1.0, 0.0))
    }

    fn random_on(set: &FreqSet, seed: u64) -> TrigPoly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TrigPoly::from_terms(
            set.dim(),
            set.iter().map(|k| {
                (k.clone(), Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            }),
        )
        .unwrap()
    }

    #[test]
    fn wrq_examples() {
        let rep = scale_into_wrq(&mono(&[1]), 2.0, 2.0).unwrap();
        assert!((rep.scale - 1.0).abs() < 1e-15);
        let phi = wrq_potential(&mono(&[1]), 2.0);
        assert!((phi.coeff(&MultiIndex::from([1])) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let rep = scale_into_wrq(&mono(&[2]), 2.0, 2.0).unwrap();
        assert!((rep.scale - 0.25).abs() < 1e-15);
    }

    #[test]
    fn truncated_bernoulli_potential_is_dirichlet() {
        let r = 1.5;
        let f = KernelSpec::Bernoulli { r, d: 2, degree: 3 }.to_poly().unwrap();
        let phi = wrq_potential(&f, r);
        for (_, c) in phi.terms() {
            assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let rep = scale_into_wrq(&f, r, 2.0).unwrap();
        assert!((rep.scale - 1.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn multiplier_round_trip() {
        let f = random_on(&FreqSet::hyperbolic_cross(5, 2).unwrap(), 4);
        let back = wrq_reconstruct(&wrq_potential(&f, 2.3), 2.3);
        assert!(back.sub(&f).unwrap().max_abs_coeff() < 1e-12 * f.max_abs_coeff());
    }

    #[test]
    fn hrq_proxy_single_block() {
        let r = 1.5;
        let rep = scale_into_hrq(&mono(&[1]), r, 2.0, HrqMode::Proxy).unwrap();
        assert_eq!(rep.constraints.len(), 1);
        assert_eq!(rep.binding_constraint().unwrap().label, "A_(1)");
        assert!((rep.scale - (-r).exp2()).abs() < 1e-15);
    }

    #[test]
    fn hrq_proxy_binds_on_largest_weighted_block() {
        let r = 1.0;
        let f = mono(&[1]).add(&mono(&[6]).scale(Complex64::new(0.1, 0.0))).unwrap();
        let rep = scale_into_hrq(&f, r, 2.0, HrqMode::Proxy).unwrap();
        let binding = rep.binding_constraint().unwrap();
        let weighted = |c: &Constraint| c.measured / c.allowed;
        assert!(rep.constraints.iter().all(|c| weighted(c) <= weighted(binding)));
        assert!((rep.scale * weighted(binding) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hrq_direct_constant_is_capped_by_identity_term() {
        let f = TrigPoly::constant(2, Complex64::new(2.0, 0.0));
        let rep = scale_into_hrq(&f, 1.5, 2.0, HrqMode::Direct).unwrap();
        assert!(rep.differences_vanish);
        assert!((rep.scale - 0.5).abs() < 1e-15);
        assert_eq!(rep.binding_constraint().unwrap().label, "e=∅");
    }

    #[test]
    fn hrq_direct_flags_unstable_sup_ratios() {
        let f = mono(&[1, 1]);
        let rep = scale_into_hrq_with(&f, 5.0, f64::INFINITY, HrqMode::Direct, 4).unwrap();
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn structural_examples() {
        let a = 1.3;
        for beta in [1.0, 0.5] {
            let w = scale_into_structural(&mono(&[1]), ClassSpec::WabA { a, b: 0.7, beta }).unwrap();
            assert!((w.scale - (-a).exp2()).abs() < 1e-15);
        }
        let mut f = TrigPoly::zero(1);
        for j in 0..6u32 {
            let k = if j == 0 { 0 } else { 1i64 << (j - 1) };
            f.add_term(MultiIndex::from([k]), Complex64::new((-a * j as f64).exp2(), 0.0));
        }
        let rep = scale_into_structural(&f, ClassSpec::WabA { a, b: 0.0, beta: 1.0 }).unwrap();
        assert!((rep.scale - 1.0).abs() < 1e-14);
    }

    #[test]
    fn layer_quasi_norm_is_subadditive_over_blocks() {
        for seed in 0..10 {
            let f = random_on(&FreqSet::hyperbolic_cross(6, 2).unwrap(), seed);
            let blocks = dyadic_blocks(&f);
            for (j, fj) in layers(&f) {
                for beta in [1.0, 0.5, 0.25] {
                    let lhs = a_beta_norm(&fj, beta).unwrap().powf(beta);
                    let rhs: f64 = blocks
                        .iter()
                        .filter(|(s, _)| s.l1() == j as i64)
                        .map(|(_, b)| a_beta_norm(b, beta).unwrap().powf(beta))
                        .sum();
                    assert!(lhs <= rhs * (1.0 + 1e-12), "seed {seed} layer {j} beta {beta}");
                }
            }
        }
    }

    #[test]
    fn h_scale_bounded_by_w_scale_with_shifted_log_exponent() {
        let (a, b) = (0.8, 0.3);
        for seed in 0..10 {
            let f = random_on(&FreqSet::hyperbolic_cross(6, 2).unwrap(), seed);
            for beta in [1.0, 0.5, 0.25] {
                let h = scale_into_structural(&f, ClassSpec::HabA { a, b, beta }).unwrap().scale;
                let w = scale_into_structural(&f, ClassSpec::WabA { a, b: b + 1.0 / beta, beta })
                    .unwrap()
                    .scale;
                // layer j holds j + 1 blocks against j̄ in the envelope
                let slack = 2f64.powf(1.0 / beta);
                assert!(h <= w * slack * (1.0 + 1e-12), "seed {seed} beta {beta}: {h} > {w}");
            }
        }
    }

    #[test]
    fn embedding_checks() {
        let rep = check_embedding(&mono(&[1]), 2.0, 2.0, EmbeddingSource::Sobolev).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(rep.max_ratio.is_finite() && rep.max_ratio > 0.0);
        let zero = check_embedding(&TrigPoly::zero(2), 2.0, 1.5, EmbeddingSource::Holder).unwrap();
        assert!(zero.rows.is_empty());
        assert!(matches!(
            check_embedding(&mono(&[1]), 2.0, 1.0, EmbeddingSource::Sobolev),
            Err(Error::UnsupportedRange(_))
        ));
        assert!(matches!(
            check_embedding(&mono(&[1]), 2.0, 3.0, EmbeddingSource::Holder),
            Err(Error::UnsupportedRange(_))
        ));
    }

    #[test]
    fn single_block_embedding_reduces_to_block_inequality() {
        let s = MultiIndex::from([2, 3]);
        let block = FreqSet::rho(s.as_slice()).unwrap();
        let f = random_on(&block, 9);
        let q = 1.5;
        let rep = check_embedding(&f, 2.0, q, EmbeddingSource::Holder).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].layer, 5);
        let scaled = f.scale(Complex64::new(rep.scale, 0.0));
        let lhs = a_norm(&scaled);
        let rhs = lp_norm_detailed(&scaled, q, 8).unwrap().value * (5.0 / q).exp2();
        assert!(lhs <= rhs * 4.0, "{lhs} vs {rhs}");
    }
}
