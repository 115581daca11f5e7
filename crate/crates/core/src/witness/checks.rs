use super::fooling::FoolingFunction;
use super::integration::IntegrationFooler;
use crate::decomposition::{
    a_beta_norm, a_block, a_norm, band_blocks, budget_oversample, lp_norm_detailed, sup_norm, DEFAULT_OVERSAMPLE,
};
use crate::spectral::{box_cardinality, compositions, MultiIndex, TrigPoly};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct BandRow {
    pub u: MultiIndex,
    pub sup: f64,
    /// `‖A_u(t)‖_∞ / (n - ‖u‖₁ + d)^{d-1}`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HInfinityReport {
    pub n: u32,
    pub rows: Vec<BandRow>,
    /// Blocks outside the support-implied region that fail to vanish exactly.
    pub outside_nonzero: Vec<MultiIndex>,
    /// Nonzero blocks with `‖u‖₁ > n + d`.
    pub beyond_cross: Vec<MultiIndex>,
    pub max_ratio: f64,
    /// `min_u 2^{-r‖u‖₁} / ‖A_u(t)‖_∞`, the proxy scale into `H^r_∞`.
    pub class_scale: f64,
    /// `class_scale · 2^{rn}`, bounded when the scaling `t 2^{-rn}` is sharp.
    pub normalized_scale: f64,
}

impl HInfinityReport {
    pub fn support_vanishing_holds(&self) -> bool {
        self.outside_nonzero.is_empty() && self.beyond_cross.is_empty()
    }
}

/// Tabulates `‖A_u(t)‖_∞` for `‖u‖₁ ≤ n + d`, given the levels `s` whose
/// blocks make up `t`. `A_u(t)` must vanish unless `u_j ≤ s_j + 1` on every
/// axis for some contributing `s`.
pub fn h_infinity_table(t: &TrigPoly, levels: &[MultiIndex], n: u32, r: f64) -> Result<HInfinityReport> {
    let d = t.dim();
    let inside = |u: &MultiIndex| {
        levels
            .iter()
            .any(|s| u.as_slice().iter().zip(s.as_slice()).all(|(&a, &b)| a <= b + 1))
    };
    let mut rows = Vec::new();
    let mut outside_nonzero = Vec::new();
    let mut class_scale = f64::INFINITY;
    for total in 0..=(n as usize + d) as u32 {
        for u in compositions(total, d) {
            let block = a_block(t, &u);
            if !inside(&u) {
                if !block.is_zero() {
                    outside_nonzero.push(u);
                }
                continue;
            }
            if block.is_zero() {
                continue;
            }
            let sup = sup_norm(&block, budget_oversample(&block.degrees(), DEFAULT_OVERSAMPLE))?.value();
            let denom = ((n as i64 - u.l1() + d as i64) as f64).powi(d as i32 - 1);
            class_scale = class_scale.min((-r * u.l1() as f64).exp2() / sup);
            rows.push(BandRow {
                ratio: sup / denom,
                u,
                sup,
            });
        }
    }
    let beyond_cross = band_blocks(t)
        .into_iter()
        .filter(|(u, b)| u.l1() > (n as usize + d) as i64 && !b.is_zero())
        .map(|(u, _)| u)
        .collect();
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(HInfinityReport {
        n,
        rows,
        outside_nonzero,
        beyond_cross,
        max_ratio,
        class_scale,
        normalized_scale: class_scale * (r * n as f64).exp2(),
    })
}

pub fn h_infinity_check(fool: &IntegrationFooler, r: f64) -> Result<HInfinityReport> {
    let levels: Vec<MultiIndex> = fool
        .blocks
        .iter()
        .filter(|b| !b.degenerate)
        .map(|b| b.level.clone())
        .collect();
    h_infinity_table(&fool.t, &levels, fool.n, r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ABetaRow {
    pub level: MultiIndex,
    pub beta: f64,
    pub quasi_norm: f64,
    /// `|t_s|_{A_β} / 2^{n/β}`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sp1Row {
    pub level: MultiIndex,
    /// `ϑ(N)` of the box `N_j = 2^{s_j} - 1` bounding `ρ(s)`.
    pub box_size: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ABetaReport {
    pub n: u32,
    pub q: f64,
    pub rows: Vec<ABetaRow>,
    pub sp1: Vec<Sp1Row>,
}

impl ABetaReport {
    pub fn max_ratio(&self, beta: f64) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.beta == beta)
            .map(|r| r.ratio)
            .fold(0.0, f64::max)
    }

    pub fn sp1_holds(&self) -> bool {
        self.sp1.iter().all(|r| r.holds)
    }
}

/// Relative slack allowed in constant-free audits.
pub const AUDIT_TOLERANCE: f64 = 1e-9;

/// `|t_s|_{A_β}` per block and the inequality `|g|_A ≤ ϑ(N)^{1/q} ‖g‖_q`
/// for every `g_{ξ,s}` in its bounding box.
pub fn abeta_block_check(ff: &FoolingFunction, betas: &[f64], q: f64) -> Result<ABetaReport> {
    let mut rows = Vec::new();
    let mut sp1 = Vec::new();
    for b in &ff.blocks {
        for &beta in betas {
            let quasi_norm = a_beta_norm(&b.t, beta)?;
            rows.push(ABetaRow {
                level: b.level.clone(),
                beta,
                quasi_norm,
                ratio: quasi_norm / (ff.n as f64 / beta).exp2(),
            });
        }
        let g = &b.vanishing.g;
        let corner: Vec<u32> = b
            .level
            .as_slice()
            .iter()
            .map(|&s| ((1u64 << s) - 1) as u32)
            .collect();
        let box_size = box_cardinality(&corner);
        let lhs = a_norm(g);
        let gq = lp_norm_detailed(g, q, budget_oversample(&g.degrees(), DEFAULT_OVERSAMPLE))?.value;
        let rhs = (box_size as f64).powf(1.0 / q) * gq;
        sp1.push(Sp1Row {
            level: b.level.clone(),
            box_size,
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + AUDIT_TOLERANCE),
        });
    }
    Ok(ABetaReport {
        n: ff.n,
        q,
        rows,
        sp1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;

    #[test]
    fn zero_table_is_empty() {
        let rep = h_infinity_table(&TrigPoly::zero(2), &[], 4, 1.0).unwrap();
        assert!(rep.rows.is_empty());
        assert!(rep.support_vanishing_holds());
    }

    #[test]
    fn single_block_only_touches_small_levels() {
        let s = MultiIndex::from([2, 1]);
        let t = TrigPoly::real_valued(
            2,
            [
                (MultiIndex::from([2, 1]), Complex64::new(0.3, 0.1)),
                (MultiIndex::from([-2, -1]), Complex64::new(0.3, -0.1)),
                (MultiIndex::from([0, 0]), Complex64::new(0.5, 0.0)),
            ],
        )
        .unwrap();
        let rep = h_infinity_table(&t, std::slice::from_ref(&s), 3, 1.0).unwrap();
        assert!(rep.support_vanishing_holds());
        assert!(rep
            .rows
            .iter()
            .all(|r| r.u.as_slice().iter().zip(s.as_slice()).all(|(a, b)| a <= &(b + 1))));
    }
}
