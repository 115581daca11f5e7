//! Seeded random-instance audits of the norm inequalities.
//!
//! Constant-free families count any ratio above `1 + tolerance` as a
//! violation. The remaining families report the largest observed ratio as an
//! empirical constant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::classes::{check_embedding, scale_into, ClassSpec, EmbeddingSource, HrqMode};
use crate::decomposition::{a_beta_norm, a_block, a_norm, dyadic_blocks, layers, lp_norm_detailed};
use crate::spectral::{box_cardinality, compositions, FreqSet, MultiIndex, TrigPoly};
use crate::witness::mix_seed;
use crate::{Complex64, Result};

use super::config::{AuditFamily, ExperimentConfig};
use super::csv_out::Row;
use super::runners::ExperimentOutput;

/// Relative slack for the constant-free inequalities.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;
/// Relative slack for `λ(cf) = λ(f) / |c|`.
pub const HOMOGENEITY_TOLERANCE: f64 = 1e-12;

/// Result of one audit family (or one parameter cell of it).
#[derive(Clone, Debug, PartialEq)]
pub struct AuditSummary {
    pub family: AuditFamily,
    /// Cell parameters, e.g. `n` and `q` for the cross-cardinality audit.
    pub n: Option<u32>,
    pub q: Option<f64>,
    pub trials: usize,
    /// Largest observed ratio (for homogeneity: largest relative deviation).
    pub max_ratio: f64,
    /// Allowed maximum for constant-free families.
    pub limit: Option<f64>,
    /// `(trial, ratio)` of every violation.
    pub violations: Vec<(usize, f64)>,
}

fn rng_for(seed: u64, family: AuditFamily, cell: i64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, &[family as i64, cell, trial as i64]))
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Gaussian coefficients on a random subset of `set` (density in `[0.2, 1]`).
fn random_poly(set: &FreqSet, rng: &mut ChaCha8Rng) -> TrigPoly {
    let density = rng.random_range(0.2..=1.0);
    let mut terms: Vec<(MultiIndex, Complex64)> = Vec::new();
    for k in set.iter() {
        if rng.random_bool(density) {
            terms.push((k.clone(), gaussian(rng)));
        }
    }
    if terms.is_empty() {
        terms.push((set.indices()[0].clone(), Complex64::new(1.0, 0.0)));
    }
    TrigPoly::from_terms(set.dim(), terms).expect("dimension matches the set")
}

fn random_box(d: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..d).map(|_| rng.random_range(0..=4)).collect()
}

fn summarize(
    family: AuditFamily,
    cell: (Option<u32>, Option<f64>),
    ratios: Vec<f64>,
    limit: Option<f64>,
) -> AuditSummary {
    let violations = match limit {
        Some(l) => ratios
            .iter()
            .enumerate()
            .filter(|(_, r)| !(**r <= l))
            .map(|(i, r)| (i, *r))
            .collect(),
        None => Vec::new(),
    };
    AuditSummary {
        family,
        n: cell.0,
        q: cell.1,
        trials: ratios.len(),
        max_ratio: ratios.iter().copied().fold(0.0, f64::max),
        limit,
        violations,
    }
}

fn par_trials(trials: usize, run: impl Fn(usize) -> Result<f64> + Sync + Send) -> Result<Vec<f64>> {
    (0..trials).into_par_iter().map(&run).collect()
}

/// `|f|_A ≤ ϑ(N)^{1/2} ‖f‖_2` on random boxes.
pub fn audit_sp1(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let ratios = par_trials(cfg.trials, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::Sp1, 0, t);
        let n_box = random_box(cfg.d, &mut rng);
        let f = random_poly(&FreqSet::boxed(&n_box)?, &mut rng);
        let rhs = (box_cardinality(&n_box) as f64).sqrt() * lp_norm_detailed(&f, 2.0, 2)?.value;
        Ok(a_norm(&f) / rhs)
    })?;
    Ok(summarize(AuditFamily::Sp1, (None, Some(2.0)), ratios, Some(1.0 + INEQUALITY_TOLERANCE)))
}

/// `Σ|y_j|^β ≤ (Σ|y_j|)^β M^{1-β}` on random arrays and exponents.
pub fn audit_s4(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let ratios = par_trials(cfg.trials, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::S4, 0, t);
        let len = rng.random_range(1..=64usize);
        let beta = if t % 10 == 0 { 1.0 } else { rng.random_range(0.05..=1.0) };
        let y: Vec<f64> = (0..len)
            .map(|_| {
                let v: f64 = StandardNormal.sample(&mut rng);
                v * (rng.random_range(-6.0..6.0f64)).exp()
            })
            .collect();
        let lhs: f64 = y.iter().map(|v| v.abs().powf(beta)).sum();
        let rhs = y.iter().map(|v| v.abs()).sum::<f64>().powf(beta) * (len as f64).powf(1.0 - beta);
        Ok(lhs / rhs)
    })?;
    Ok(summarize(AuditFamily::S4, (None, None), ratios, Some(1.0 + INEQUALITY_TOLERANCE)))
}

/// `λ(c f) = λ(f) / |c|` for every normalizer, as `max |λ(cf)|c|/λ(f) - 1|`.
pub fn audit_homogeneity(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let d = cfg.d.min(2);
    let q = cfg.q;
    let r = cfg.r.max(1.0 / q + 0.1);
    let classes = [
        ClassSpec::Wrq { r, q },
        ClassSpec::Hrq { r, q },
        ClassSpec::WabA {
            a: cfg.a,
            b: cfg.b,
            beta: cfg.beta,
        },
        ClassSpec::HabA {
            a: cfg.a,
            b: cfg.b,
            beta: cfg.beta,
        },
    ];
    let ratios = par_trials(cfg.trials, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::Homogeneity, 0, t);
        let level = rng.random_range(1..=4u32);
        let f = random_poly(&FreqSet::hyperbolic_cross(level, d)?, &mut rng);
        let c = gaussian(&mut rng) * rng.random_range(-8.0..8.0f64).exp();
        let cf = f.scale(c);
        let mut worst = 0.0f64;
        let mut check = |class: ClassSpec, mode: HrqMode| -> Result<()> {
            let base = scale_into(&f, class, mode, cfg.oversample)?.scale;
            let scaled = scale_into(&cf, class, mode, cfg.oversample)?.scale;
            worst = worst.max((scaled * c.norm() / base - 1.0).abs());
            Ok(())
        };
        for class in classes {
            check(class, HrqMode::Proxy)?;
        }
        if t % 10 == 0 {
            check(ClassSpec::Hrq { r, q }, HrqMode::Direct)?;
        }
        Ok(worst)
    })?;
    Ok(summarize(
        AuditFamily::Homogeneity,
        (None, Some(q)),
        ratios,
        Some(HOMOGENEITY_TOLERANCE),
    ))
}

/// Grid factor for the non-even `L_q` norms of the cross audit; the ratio is
/// an empirical constant, so rectangle-rule accuracy suffices.
const CROSS_AUDIT_OVERSAMPLE: usize = 2;

/// `‖t‖_A / (2^{n/q} n^{(d-1)(1-1/q)} ‖t‖_q)` on random `t ∈ T(Q_n)`, one
/// cell per `(n, q)` with `n = 2..8`, `q ∈ {1.5, 2}`.
pub fn audit_theorem_a(cfg: &ExperimentConfig) -> Result<Vec<AuditSummary>> {
    let per_cell = (cfg.trials / 20).max(5);
    let mut out = Vec::new();
    for q in [1.5, 2.0] {
        for n in 2u32..=8 {
            let set = FreqSet::hyperbolic_cross(n, cfg.d)?;
            let nf = n as f64;
            let scale = (nf / q).exp2() * nf.powf((cfg.d as f64 - 1.0) * (1.0 - 1.0 / q));
            let cell = (n as i64) * 10 + (q * 2.0) as i64;
            let ratios = par_trials(per_cell, |t| {
                let mut rng = rng_for(cfg.seed, AuditFamily::TheoremA, cell, t);
                let f = random_poly(&set, &mut rng);
                let factor = cfg.oversample.min(CROSS_AUDIT_OVERSAMPLE);
                Ok(a_norm(&f) / (scale * lp_norm_detailed(&f, q, factor)?.value))
            })?;
            out.push(summarize(AuditFamily::TheoremA, (Some(n), Some(q)), ratios, None));
        }
    }
    Ok(out)
}

/// Empirical constants of both embeddings into `W^{a,b}_A` on random
/// `f ∈ T(Q_6)`.
pub fn audit_inp1(cfg: &ExperimentConfig) -> Result<Vec<AuditSummary>> {
    let per_cell = (cfg.trials / 50).max(5);
    let q = cfg.q.clamp(1.0, 2.0);
    let mut out = Vec::new();
    for (cell, source) in [(0i64, EmbeddingSource::Sobolev), (1, EmbeddingSource::Holder)] {
        if source == EmbeddingSource::Sobolev && q <= 1.0 {
            continue;
        }
        let set = FreqSet::hyperbolic_cross(6, cfg.d)?;
        let ratios = par_trials(per_cell, |t| {
            let mut rng = rng_for(cfg.seed, AuditFamily::Inp1, cell, t);
            let f = random_poly(&set, &mut rng);
            Ok(check_embedding(&f, cfg.r.max(1.0), q, source)?.max_ratio)
        })?;
        out.push(summarize(AuditFamily::Inp1, (Some(cell as u32), Some(q)), ratios, None));
    }
    Ok(out)
}

/// `‖A_s(f)‖_A / (2^{‖s‖₁/q} ‖A_s(f)‖_q)` for random `f` near the block `s`.
pub fn audit_in4(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let per_cell = (cfg.trials / 10).max(5);
    let q = cfg.q;
    let ratios = par_trials(per_cell, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::In4, 0, t);
        let total = rng.random_range(1..=6u32);
        let levels = compositions(total, cfg.d);
        let s = levels[rng.random_range(0..levels.len())].clone();
        let wide: Vec<u32> = s.as_slice().iter().map(|&v| 1u32 << v.max(0)).collect();
        let f = random_poly(&FreqSet::boxed(&wide)?, &mut rng);
        let block = a_block(&f, &s);
        if block.is_zero() {
            return Ok(0.0);
        }
        let bound = (s.l1() as f64 / q).exp2() * lp_norm_detailed(&block, q, cfg.oversample)?.value;
        Ok(a_norm(&block) / bound)
    })?;
    Ok(summarize(AuditFamily::In4, (None, Some(q)), ratios, None))
}

/// `|f|_{A_β} ≤ ϑ(N)^{1/β - 1/2} ‖f‖_2` on random boxes and exponents.
pub fn audit_sc1(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let ratios = par_trials(cfg.trials, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::Sc1, 0, t);
        let n_box = random_box(cfg.d, &mut rng);
        let beta = if t % 10 == 0 { 1.0 } else { rng.random_range(0.05..=1.0) };
        let f = random_poly(&FreqSet::boxed(&n_box)?, &mut rng);
        let theta = box_cardinality(&n_box) as f64;
        let rhs = theta.powf(1.0 / beta - 0.5) * lp_norm_detailed(&f, 2.0, 2)?.value;
        Ok(a_beta_norm(&f, beta)? / rhs)
    })?;
    Ok(summarize(AuditFamily::Sc1, (None, Some(2.0)), ratios, Some(1.0 + INEQUALITY_TOLERANCE)))
}

/// Layer quasi-norm subadditivity `|f_j|_{A_β}^β ≤ Σ_{‖s‖₁=j} |δ_s f|_{A_β}^β`,
/// as the worst ratio over layers.
pub fn audit_emb(cfg: &ExperimentConfig) -> Result<AuditSummary> {
    let ratios = par_trials(cfg.trials, |t| {
        let mut rng = rng_for(cfg.seed, AuditFamily::Emb, 0, t);
        let beta = if t % 10 == 0 { 1.0 } else { rng.random_range(0.05..=1.0) };
        let level = rng.random_range(1..=5u32);
        let f = random_poly(&FreqSet::hyperbolic_cross(level, cfg.d)?, &mut rng);
        let blocks = dyadic_blocks(&f);
        let mut worst = 0.0f64;
        for (j, fj) in layers(&f) {
            let lhs = a_beta_norm(&fj, beta)?.powf(beta);
            let mut rhs = 0.0;
            for (s, b) in &blocks {
                if s.l1() == j as i64 {
                    rhs += a_beta_norm(b, beta)?.powf(beta);
                }
            }
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
        }
        Ok(worst)
    })?;
    Ok(summarize(AuditFamily::Emb, (None, None), ratios, Some(1.0 + INEQUALITY_TOLERANCE)))
}

pub fn audit_family(cfg: &ExperimentConfig, family: AuditFamily) -> Result<Vec<AuditSummary>> {
    Ok(match family {
        AuditFamily::Sp1 => vec![audit_sp1(cfg)?],
        AuditFamily::S4 => vec![audit_s4(cfg)?],
        AuditFamily::Homogeneity => vec![audit_homogeneity(cfg)?],
        AuditFamily::TheoremA => audit_theorem_a(cfg)?,
        AuditFamily::Inp1 => audit_inp1(cfg)?,
        AuditFamily::In4 => vec![audit_in4(cfg)?],
        AuditFamily::Sc1 => vec![audit_sc1(cfg)?],
        AuditFamily::Emb => vec![audit_emb(cfg)?],
    })
}

impl AuditSummary {
    pub fn to_row(&self, d: usize) -> Row {
        let status = match (self.limit, self.violations.len()) {
            (None, _) => format!("empirical trials={}", self.trials),
            (Some(_), 0) => "ok".to_string(),
            (Some(_), k) => format!("violations={k} trials={}", self.trials),
        };
        let mut row = Row {
            n: self.n,
            q: self.q,
            value: Some(self.max_ratio),
            ..Row::new(format!("inequalities/{}", self.family.label()), d)
        };
        if let Some(l) = self.limit {
            row.predicted_term = Some(l);
            row.ratio = Some(self.max_ratio / l);
        }
        row.status(status)
    }
}

/// Runs the configured audit families in order.
pub fn run_inequalities(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut out = ExperimentOutput::default();
    for family in cfg.audit_families() {
        for summary in audit_family(cfg, family)? {
            for (trial, ratio) in &summary.violations {
                out.violations
                    .push(format!("{}: trial {trial} ratio {ratio:.17e}", family.label()));
            }
            out.rows.push(summary.to_row(cfg.d));
        }
    }
    Ok(out)
}
