//! Dense null spaces and a primal-dual interior-point solver for
//! `min cᵀw` subject to `-1 ≤ Mw ≤ 1`.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::householder;
use faer::linalg::solvers::{Qr, Solve};
use faer::traits::{math_utils, ComplexField};
use faer::{Conj, Mat, MatRef, Par, Side};

use crate::{Error, Result};

/// Pivot ratio `min|R_ii| / max|R_ii|` below which a constraint matrix is
/// reported ill-conditioned.
pub const ILL_CONDITIONED_RATIO: f64 = 1e-10;

/// Null space of an `m × n` constraint matrix `E`, represented by the QR
/// factorization of `Eᴴ`. Columns `m..n` of `Q` span `ker E` whenever
/// `rank E = m`; they lie in `ker E` regardless.
pub struct NullSpace<T: ComplexField<Real = f64>> {
    qr: Option<Qr<T>>,
    unknowns: usize,
    constraints: usize,
    pub pivot_ratio: f64,
}

impl<T: ComplexField<Real = f64>> NullSpace<T> {
    /// `adjoint` is `Eᴴ`, of shape `n × m`.
    pub fn from_adjoint(adjoint: MatRef<'_, T>) -> Result<Self> {
        let (n, m) = (adjoint.nrows(), adjoint.ncols());
        if m >= n {
            return Err(Error::Infeasible(format!(
                "{m} constraints leave no null space among {n} unknowns"
            )));
        }
        if m == 0 {
            return Ok(NullSpace {
                qr: None,
                unknowns: n,
                constraints: 0,
                pivot_ratio: 1.0,
            });
        }
        let qr = adjoint.qr();
        let r = qr.R();
        let diag: Vec<f64> = (0..m).map(|i| math_utils::abs(&r[(i, i)])).collect();
        let hi = diag.iter().cloned().fold(0.0, f64::max);
        let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        let pivot_ratio = if hi > 0.0 { lo / hi } else { 0.0 };
        Ok(NullSpace {
            qr: Some(qr),
            unknowns: n,
            constraints: m,
            pivot_ratio,
        })
    }

    pub fn dim(&self) -> usize {
        self.unknowns - self.constraints
    }

    pub fn ill_conditioned(&self) -> bool {
        self.pivot_ratio < ILL_CONDITIONED_RATIO
    }

    /// Maps null-space coordinates (`dim × k`) to vectors in `Cⁿ` (`n × k`).
    pub fn embed(&self, coords: MatRef<'_, T>) -> Mat<T> {
        let k = coords.ncols();
        let mut out = Mat::<T>::zeros(self.unknowns, k);
        out.as_mut()
            .subrows_mut(self.constraints, self.dim())
            .copy_from(coords);
        if let Some(qr) = &self.qr {
            let scratch = householder::apply_block_householder_sequence_on_the_left_in_place_scratch::<T>(
                self.unknowns,
                qr.Q_coeff().nrows(),
                k,
            );
            householder::apply_block_householder_sequence_on_the_left_in_place_with_conj(
                qr.Q_basis(),
                qr.Q_coeff(),
                Conj::No,
                out.as_mut(),
                Par::Seq,
                MemStack::new(&mut MemBuffer::new(scratch)),
            );
        }
        out
    }

    /// All basis vectors as columns.
    pub fn basis(&self) -> Mat<T> {
        self.embed(Mat::<T>::identity(self.dim(), self.dim()).as_ref())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub w: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Final complementarity `sᵀz / rows`.
    pub mu: f64,
}

const STEP_FRACTION: f64 = 0.995;

fn max_step(x: &[f64], dx: &[f64]) -> f64 {
    x.iter()
        .zip(dx)
        .filter(|(_, &d)| d < 0.0)
        .map(|(&v, &d)| -v / d)
        .fold(1.0f64 / STEP_FRACTION, f64::min)
        * STEP_FRACTION
}

fn mat_vec(m: MatRef<'_, f64>, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m.nrows()];
    for (j, &xj) in x.iter().enumerate().take(m.ncols()) {
        if xj != 0.0 {
            let col = m.col(j);
            for (i, o) in out.iter_mut().enumerate() {
                *o += col[i] * xj;
            }
        }
    }
    out
}

fn mat_t_vec(m: MatRef<'_, f64>, y: &[f64]) -> Vec<f64> {
    (0..m.ncols())
        .map(|j| {
            let col = m.col(j);
            (0..m.nrows()).map(|i| col[i] * y[i]).sum()
        })
        .collect()
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &b| a.max(b.abs()))
}

/// Mehrotra predictor-corrector for `min cᵀw` subject to `-1 ≤ Mw ≤ 1`,
/// started from `w = 0` (always primal feasible).
pub fn solve_box_lp(m: MatRef<'_, f64>, c: &[f64], tol: f64, max_iter: usize) -> Result<LpSolution> {
    let (rows, n) = (m.nrows(), m.ncols());
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.len(),
        });
    }
    let mut w = vec![0.0; n];
    if n == 0 {
        return Ok(LpSolution {
            w,
            objective: 0.0,
            iterations: 0,
            converged: true,
            mu: 0.0,
        });
    }
    let mut s1 = vec![1.0; rows];
    let mut s2 = vec![1.0; rows];
    let mut z1 = vec![1.0; rows];
    let mut z2 = vec![1.0; rows];
    let c_scale = 1.0 + norm_inf(c);
    let total = 2.0 * rows as f64;
    let mut converged = false;
    let mut iterations = 0;
    let mut mu = 1.0;
    for it in 0..max_iter {
        iterations = it;
        let mw = mat_vec(m, &w);
        let zdiff: Vec<f64> = z1.iter().zip(&z2).map(|(a, b)| a - b).collect();
        let mtz = mat_t_vec(m, &zdiff);
        let r_d: Vec<f64> = c.iter().zip(&mtz).map(|(a, b)| a + b).collect();
        let r_p1: Vec<f64> = (0..rows).map(|i| mw[i] + s1[i] - 1.0).collect();
        let r_p2: Vec<f64> = (0..rows).map(|i| -mw[i] + s2[i] - 1.0).collect();
        let gap: f64 = s1.iter().zip(&z1).map(|(a, b)| a * b).sum::<f64>()
            + s2.iter().zip(&z2).map(|(a, b)| a * b).sum::<f64>();
        mu = gap / total;
        let objective: f64 = c.iter().zip(&w).map(|(a, b)| a * b).sum();
        if mu < tol * (1.0 + objective.abs())
            && norm_inf(&r_d) < tol * c_scale
            && norm_inf(&r_p1).max(norm_inf(&r_p2)) < tol
        {
            converged = true;
            break;
        }

        let d: Vec<f64> = (0..rows).map(|i| z1[i] / s1[i] + z2[i] / s2[i]).collect();
        let mut scaled = m.to_owned();
        for j in 0..n {
            let mut col = scaled.col_mut(j);
            for i in 0..rows {
                col[i] *= d[i].sqrt();
            }
        }
        let h = scaled.transpose() * &scaled;
        let trace: f64 = (0..n).map(|i| h[(i, i)]).sum::<f64>() / n as f64;
        let mut reg = 1e-13 * trace.max(1e-300);
        let llt = loop {
            let mut hr = h.clone();
            for i in 0..n {
                hr[(i, i)] += reg;
            }
            match hr.llt(Side::Lower) {
                Ok(l) => break l,
                Err(_) if reg < trace => reg *= 100.0,
                Err(_) => return Err(Error::Solver("normal matrix is not positive definite".into())),
            }
        };

        let direction = |rc1: &[f64], rc2: &[f64]| {
            let v: Vec<f64> = (0..rows)
                .map(|i| (rc1[i] + z1[i] * r_p1[i]) / s1[i] - (rc2[i] + z2[i] * r_p2[i]) / s2[i])
                .collect();
            let mtv = mat_t_vec(m, &v);
            let rhs: Vec<f64> = (0..n).map(|j| -r_d[j] - mtv[j]).collect();
            let sol = llt.solve(Mat::from_fn(n, 1, |i, _| rhs[i]));
            let dw: Vec<f64> = (0..n).map(|i| sol[(i, 0)]).collect();
            let mdw = mat_vec(m, &dw);
            let ds1: Vec<f64> = (0..rows).map(|i| -r_p1[i] - mdw[i]).collect();
            let ds2: Vec<f64> = (0..rows).map(|i| -r_p2[i] + mdw[i]).collect();
            let dz1: Vec<f64> = (0..rows).map(|i| (rc1[i] - z1[i] * ds1[i]) / s1[i]).collect();
            let dz2: Vec<f64> = (0..rows).map(|i| (rc2[i] - z2[i] * ds2[i]) / s2[i]).collect();
            (dw, ds1, ds2, dz1, dz2)
        };

        let rc1: Vec<f64> = (0..rows).map(|i| -s1[i] * z1[i]).collect();
        let rc2: Vec<f64> = (0..rows).map(|i| -s2[i] * z2[i]).collect();
        let (_, a_s1, a_s2, a_z1, a_z2) = direction(&rc1, &rc2);
        let ap = max_step(&s1, &a_s1).min(max_step(&s2, &a_s2)).min(1.0);
        let ad = max_step(&z1, &a_z1).min(max_step(&z2, &a_z2)).min(1.0);
        let mu_aff = ((0..rows)
            .map(|i| (s1[i] + ap * a_s1[i]) * (z1[i] + ad * a_z1[i]) + (s2[i] + ap * a_s2[i]) * (z2[i] + ad * a_z2[i]))
            .sum::<f64>())
            / total;
        let sigma = (mu_aff / mu).powi(3).min(1.0);
        let rc1: Vec<f64> = (0..rows)
            .map(|i| -s1[i] * z1[i] + sigma * mu - a_s1[i] * a_z1[i])
            .collect();
        let rc2: Vec<f64> = (0..rows)
            .map(|i| -s2[i] * z2[i] + sigma * mu - a_s2[i] * a_z2[i])
            .collect();
        let (dw, ds1, ds2, dz1, dz2) = direction(&rc1, &rc2);
        let ap = max_step(&s1, &ds1).min(max_step(&s2, &ds2)).min(1.0);
        let ad = max_step(&z1, &dz1).min(max_step(&z2, &dz2)).min(1.0);
        for j in 0..n {
            w[j] += ap * dw[j];
        }
        for i in 0..rows {
            s1[i] += ap * ds1[i];
            s2[i] += ap * ds2[i];
            z1[i] += ad * dz1[i];
            z2[i] += ad * dz2[i];
        }
    }
    let objective = c.iter().zip(&w).map(|(a, b)| a * b).sum();
    Ok(LpSolution {
        w,
        objective,
        iterations,
        converged,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use faer::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive vertex enumeration for two unknowns.
    fn vertex_oracle(m: &[[f64; 2]], c: [f64; 2]) -> f64 {
        let mut planes = Vec::new();
        for row in m {
            planes.push((*row, 1.0));
            planes.push(([-row[0], -row[1]], 1.0));
        }
        let mut best = f64::INFINITY;
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                let (a, b) = (planes[i], planes[j]);
                let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (a.1 * b.0[1] - a.0[1] * b.1) / det;
                let y = (a.0[0] * b.1 - a.1 * b.0[0]) / det;
                if planes.iter().all(|p| p.0[0] * x + p.0[1] * y <= p.1 + 1e-9) {
                    best = best.min(c[0] * x + c[1] * y);
                }
            }
        }
        best
    }

    #[test]
    fn ipm_matches_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows: Vec<[f64; 2]> = (0..6)
                .map(|_| [rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0])
                .collect();
            let c = [rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5];
            let m = Mat::from_fn(rows.len(), 2, |i, j| rows[i][j]);
            let sol = solve_box_lp(m.as_ref(), &c, 1e-10, 200).unwrap();
            assert!(sol.converged);
            let oracle = vertex_oracle(&rows, c);
            assert!((sol.objective - oracle).abs() < 1e-7, "{} vs {oracle}", sol.objective);
        }
    }

    #[test]
    fn ipm_box_is_tight() {
        let m = Mat::<f64>::identity(3, 3);
        let sol = solve_box_lp(m.as_ref(), &[-1.0, 2.0, 0.5], 1e-10, 100).unwrap();
        assert!(sol.converged);
        assert!((sol.objective + 3.5).abs() < 1e-8);
        assert!((sol.w[0] - 1.0).abs() < 1e-7 && (sol.w[1] + 1.0).abs() < 1e-7);
    }

    #[test]
    fn null_space_annihilates_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (m, n) = (5, 12);
        let e = Mat::<c64>::from_fn(m, n, |_, _| c64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let ns = NullSpace::from_adjoint(e.adjoint().to_owned().as_ref()).unwrap();
        assert_eq!(ns.dim(), 7);
        assert!(!ns.ill_conditioned());
        let basis = ns.basis();
        let prod = &e * &basis;
        let worst = (0..prod.nrows())
            .flat_map(|i| (0..prod.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| prod[(i, j)].norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-13);
        let gram = basis.adjoint() * &basis;
        for i in 0..7 {
            for j in 0..7 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - c64::new(expect, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn rank_deficiency_is_flagged() {
        let e = Mat::<f64>::from_fn(2, 4, |_, j| j as f64 + 1.0);
        let ns = NullSpace::from_adjoint(e.transpose()).unwrap();
        assert!(ns.ill_conditioned());
        let prod = &e * ns.basis();
        assert!((0..2).all(|i| (0..2).all(|j| prod[(i, j)].abs() < 1e-12)));
        assert!(NullSpace::from_adjoint(Mat::<f64>::zeros(3, 3).as_ref()).is_err());
    }
}
