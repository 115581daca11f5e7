use faer::Mat;
use rayon::prelude::*;

use super::linalg::{solve_box_lp, NullSpace};
use crate::spectral::{compositions, oversampled_dims, GridFn, MultiIndex, PointSet, TrigPoly};
use crate::{Complex64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationOptions {
    /// Base constraint grid factor.
    pub constraint_oversample: usize,
    /// Audit grid factor.
    pub audit_oversample: usize,
    /// Extra solves allowed after adding violated audit nodes.
    pub exchange_rounds: usize,
    /// Exchange stops once the audit sup is at most this.
    pub exchange_target: f64,
    /// Cap on audit nodes added per round.
    pub exchange_batch: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            constraint_oversample: 4,
            audit_oversample: 8,
            exchange_rounds: 6,
            exchange_target: 1.005,
            exchange_batch: 512,
            tolerance: 1e-9,
            max_iterations: 200,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntegrationBlock {
    pub level: MultiIndex,
    /// Per-axis degree bound `[2^{s_j - 1}]`.
    pub degree: Vec<u64>,
    /// Real-valued `t_s`, rescaled so that its audited sup is at most 1.
    pub t: TrigPoly,
    /// Mean of the rescaled `t_s`.
    pub mean: f64,
    /// LP optimum before rescaling.
    pub raw_mean: f64,
    /// Audit-grid sup of the LP solution, before rescaling.
    pub audit_sup: f64,
    pub exchange_rounds: usize,
    pub added_constraints: usize,
    pub lp_iterations: usize,
    pub converged: bool,
    /// No admissible nonzero `t_s` exists; `t_s = 0` is returned.
    pub degenerate: bool,
    /// `max_j |t_s(ξ^j)|`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct IntegrationFooler {
    pub n: u32,
    pub d: usize,
    pub points: usize,
    pub t: TrigPoly,
    pub blocks: Vec<IntegrationBlock>,
    /// Mean of `t`, i.e. `(2π)^{-d} ∫ t`.
    pub mean: f64,
    /// `n^{d-1}`.
    pub predicted: f64,
    pub ratio: f64,
    pub max_audit_sup: f64,
    pub warnings: Vec<String>,
}

/// Frequencies `k ≠ 0` of the box `|k_j| ≤ deg_j` that are lexicographically
/// positive; with `k = 0` they parametrize real polynomials.
fn half_box(degree: &[u64]) -> Vec<Vec<i64>> {
    let d = degree.len();
    let mut out = Vec::new();
    let mut k: Vec<i64> = degree.iter().map(|&v| -(v as i64)).collect();
    loop {
        if k.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            out.push(k.clone());
        }
        let mut j = d;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if k[j] < degree[j] as i64 {
                k[j] += 1;
                break;
            }
            k[j] = -(degree[j] as i64);
        }
    }
}

/// Row of the real parametrization `t(x) = a_0 + Σ 2(α_k cos kx - β_k sin kx)`.
fn real_row(half: &[Vec<i64>], x: &[f64], out: &mut [f64]) {
    out[0] = 1.0;
    for (i, k) in half.iter().enumerate() {
        let phase: f64 = k.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
        let (s, c) = phase.sin_cos();
        out[2 * i + 1] = 2.0 * c;
        out[2 * i + 2] = -2.0 * s;
    }
}

fn to_poly(d: usize, half: &[Vec<i64>], y: &[f64]) -> TrigPoly {
    let mut terms = vec![(MultiIndex::zeros(d), Complex64::new(y[0], 0.0))];
    for (i, k) in half.iter().enumerate() {
        let c = Complex64::new(y[2 * i + 1], y[2 * i + 2]);
        terms.push((MultiIndex::new(k.clone()), c));
        terms.push((MultiIndex::new(k.iter().map(|v| -v).collect::<Vec<_>>()), c.conj()));
    }
    let mut p = TrigPoly::from_terms(d, terms).expect("dimension is valid");
    p.make_real().expect("built Hermitian");
    p.prune(0.0)
}

fn grid_points(dims: &[usize]) -> Vec<Vec<f64>> {
    let total: usize = dims.iter().product();
    let probe = GridFn::from_values(dims, vec![Complex64::default(); total]).expect("small grid");
    (0..total).map(|i| probe.point(i)).collect()
}

/// Flat indices of nodes that exceed `threshold` and dominate their axis
/// neighbours, largest first.
fn violated_peaks(g: &GridFn, threshold: f64, cap: usize) -> Vec<usize> {
    let dims = g.dims();
    let vals: Vec<f64> = g.values().iter().map(|v| v.norm()).collect();
    let strides: Vec<usize> = (0..dims.len())
        .map(|j| dims[j + 1..].iter().product())
        .collect();
    let mut peaks: Vec<usize> = (0..vals.len())
        .filter(|&i| {
            vals[i] > threshold
                && (0..dims.len()).all(|j| {
                    let m = dims[j];
                    if m == 1 {
                        return true;
                    }
                    let c = (i / strides[j]) % m;
                    let base = i - c * strides[j];
                    let up = base + ((c + 1) % m) * strides[j];
                    let down = base + ((c + m - 1) % m) * strides[j];
                    vals[i] >= vals[up] && vals[i] >= vals[down]
                })
        })
        .collect();
    peaks.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]).then(a.cmp(&b)));
    peaks.truncate(cap);
    peaks
}

fn solve_block(xi: &PointSet, s: &MultiIndex, opts: &IntegrationOptions) -> Result<IntegrationBlock> {
    let d = s.dim();
    let degree: Vec<u64> = s
        .as_slice()
        .iter()
        .map(|&v| if v == 0 { 0 } else { 1u64 << (v - 1) })
        .collect();
    let half = half_box(&degree);
    let nv = 1 + 2 * half.len();
    let mut row = vec![0.0; nv];
    let degenerate = |residual| IntegrationBlock {
        level: s.clone(),
        degree: degree.clone(),
        t: TrigPoly::zero(d),
        mean: 0.0,
        raw_mean: 0.0,
        audit_sup: 0.0,
        exchange_rounds: 0,
        added_constraints: 0,
        lp_iterations: 0,
        converged: true,
        degenerate: true,
        residual,
    };

    let mut a_t = Mat::<f64>::zeros(nv, xi.len());
    for (j, x) in xi.points().iter().enumerate() {
        real_row(&half, x, &mut row);
        for (i, &v) in row.iter().enumerate() {
            a_t[(i, j)] = v;
        }
    }
    let ns = match NullSpace::from_adjoint(a_t.as_ref()) {
        Ok(ns) => ns,
        Err(Error::Infeasible(_)) => return Ok(degenerate(0.0)),
        Err(e) => return Err(e),
    };
    let z = ns.basis();
    let c: Vec<f64> = (0..z.ncols()).map(|j| -z[(0, j)]).collect();

    let mut nodes = grid_points(&oversampled_dims(&degree, opts.constraint_oversample));
    let audit_dims = oversampled_dims(&degree, opts.audit_oversample);
    let audit_nodes = grid_points(&audit_dims);
    let base_nodes = nodes.len();
    let mut rounds = 0;
    loop {
        let mut b = Mat::<f64>::zeros(nodes.len(), nv);
        for (i, x) in nodes.iter().enumerate() {
            real_row(&half, x, &mut row);
            for (j, &v) in row.iter().enumerate() {
                b[(i, j)] = v;
            }
        }
        let m = &b * &z;
        let sol = solve_box_lp(m.as_ref(), &c, opts.tolerance, opts.max_iterations)?;
        let y: Vec<f64> = (0..nv)
            .map(|i| (0..z.ncols()).map(|j| z[(i, j)] * sol.w[j]).sum())
            .collect();
        let t = to_poly(d, &half, &y);
        let audit = GridFn::synthesize(&t, &audit_dims)?;
        let audit_sup = audit.max_abs().0;
        if audit_sup > opts.exchange_target && rounds < opts.exchange_rounds {
            let peaks = violated_peaks(&audit, 1.0 + opts.tolerance, opts.exchange_batch);
            if !peaks.is_empty() {
                nodes.extend(peaks.into_iter().map(|i| audit_nodes[i].clone()));
                rounds += 1;
                continue;
            }
        }
        if !sol.converged {
            return Err(Error::Solver(format!(
                "interior point did not converge on block {s} (mu = {:.2e})",
                sol.mu
            )));
        }
        let raw_mean = y[0];
        let rescale = audit_sup.max(1.0);
        let t = t.scale(Complex64::new(1.0 / rescale, 0.0));
        let residual = t
            .evaluate_many(xi.points())?
            .iter()
            .fold(0.0f64, |a, v| a.max(v.norm()));
        return Ok(IntegrationBlock {
            level: s.clone(),
            degree,
            mean: raw_mean / rescale,
            t,
            raw_mean,
            audit_sup,
            exchange_rounds: rounds,
            added_constraints: nodes.len() - base_nodes,
            lp_iterations: sol.iterations,
            converged: sol.converged,
            degenerate: false,
            residual,
        });
    }
}

/// `t = Σ_{‖s‖₁ = n} t_s` with each `t_s ∈ T(2^{s-1})` real, vanishing on
/// `ξ`, bounded by 1, and of maximal mean.
pub fn integration_fooler(xi: &PointSet, n: u32, opts: &IntegrationOptions) -> Result<IntegrationFooler> {
    let d = xi.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let cap = 1usize << (n - 1);
    if xi.len() > cap {
        return Err(Error::Infeasible(format!(
            "N = {} exceeds 2^(n-1) = {cap}",
            xi.len()
        )));
    }
    let blocks: Vec<IntegrationBlock> = compositions(n, d)
        .par_iter()
        .map(|s| solve_block(xi, s, opts))
        .collect::<Result<_>>()?;
    let mut t = TrigPoly::zero(d);
    let mut warnings = Vec::new();
    for b in &blocks {
        t = t.add(&b.t)?;
        if b.degenerate {
            warnings.push(format!("block {}: no admissible nonzero t_s; using 0", b.level));
        }
    }
    let mean: f64 = blocks.iter().map(|b| b.mean).sum();
    let predicted = (n as f64).powi(d as i32 - 1);
    let max_audit_sup = blocks.iter().map(|b| b.audit_sup).fold(0.0, f64::max);
    Ok(IntegrationFooler {
        n,
        d,
        points: xi.len(),
        t,
        blocks,
        mean,
        predicted,
        ratio: mean / predicted,
        max_audit_sup,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_box_counts() {
        assert_eq!(half_box(&[2]).len(), 2);
        assert_eq!(half_box(&[1, 1]).len(), 4);
        assert_eq!(half_box(&[0, 3]).len(), 3);
    }

    #[test]
    fn empty_points_give_constant_blocks() {
        let xi = PointSet::empty(2).unwrap();
        let fool = integration_fooler(&xi, 4, &IntegrationOptions::default()).unwrap();
        assert_eq!(fool.blocks.len(), 5);
        assert!((fool.mean - 5.0).abs() < 1e-6, "{}", fool.mean);
    }

    #[test]
    fn one_point_in_one_dimension() {
        let xi = PointSet::new(1, vec![vec![0.0]]).unwrap();
        let fool = integration_fooler(&xi, 2, &IntegrationOptions::default()).unwrap();
        let b = &fool.blocks[0];
        assert!(b.mean > 0.1, "{}", b.mean);
        assert!(b.residual < 1e-9);
        assert!(b.audit_sup <= 1.02);
        // feasibility is certified on the audit grid only
        let sup = GridFn::synthesize(&b.t, &[1024]).unwrap().max_abs().0;
        assert!(sup <= 1.02, "fine-grid sup {sup}");
    }

    #[test]
    fn too_many_points() {
        let xi = PointSet::uniform_random(9, 2, 1).unwrap();
        assert!(matches!(
            integration_fooler(&xi, 4, &IntegrationOptions::default()),
            Err(Error::Infeasible(_))
        ));
    }
}
