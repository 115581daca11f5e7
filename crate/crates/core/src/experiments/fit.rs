use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Which exponents of `log v = c + α·n·ln2 + γ·ln n` are free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", content = "pinned", rename_all = "kebab-case")]
pub enum FitMode {
    Joint,
    /// `α` held at the given value, `γ` fitted.
    PinnedAlpha(f64),
    /// `γ` held at the given value, `α` fitted.
    PinnedGamma(f64),
}

impl fmt::Display for FitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitMode::Joint => f.write_str("joint"),
            FitMode::PinnedAlpha(a) => write!(f, "alpha={a}"),
            FitMode::PinnedGamma(g) => write!(f, "gamma={g}"),
        }
    }
}

/// Least-squares fit of `log(value)` on `(n·ln 2, ln n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateFit {
    pub label: String,
    pub mode: FitMode,
    /// Power exponent in `2^n`.
    pub alpha: f64,
    /// Exponent of `n`.
    pub gamma: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub samples: usize,
    pub warning: Option<String>,
}

/// Fewer distinct `n` than this leaves the `ln n` term weakly identified.
pub const WELL_CONDITIONED_LEVELS: usize = 4;

impl RateFit {
    pub fn fit(label: &str, ns: &[f64], values: &[f64], mode: FitMode) -> Result<RateFit> {
        if ns.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: ns.len(),
                found: values.len(),
            });
        }
        if ns.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "rate fit `{label}` needs at least 3 points, got {}",
                ns.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("rate fit `{label}` needs positive values, got {v}")));
        }
        if ns.iter().any(|n| !(*n >= 1.0)) {
            return Err(Error::InvalidArgument(format!("rate fit `{label}` needs n ≥ 1")));
        }
        let xs: Vec<[f64; 2]> = ns.iter().map(|&n| [n * std::f64::consts::LN_2, n.ln()]).collect();
        let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        let (alpha, gamma, intercept) = match mode {
            FitMode::Joint => {
                let (c, coef) = least_squares::<2>(&xs, &ys)?;
                (coef[0], coef[1], c)
            }
            FitMode::PinnedAlpha(a) => {
                let y: Vec<f64> = ys.iter().zip(&xs).map(|(y, x)| y - a * x[0]).collect();
                let x: Vec<[f64; 1]> = xs.iter().map(|x| [x[1]]).collect();
                let (c, coef) = least_squares::<1>(&x, &y)?;
                (a, coef[0], c)
            }
            FitMode::PinnedGamma(g) => {
                let y: Vec<f64> = ys.iter().zip(&xs).map(|(y, x)| y - g * x[1]).collect();
                let x: Vec<[f64; 1]> = xs.iter().map(|x| [x[0]]).collect();
                let (c, coef) = least_squares::<1>(&x, &y)?;
                (coef[0], g, c)
            }
        };
        let sse: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - intercept - alpha * x[0] - gamma * x[1]).powi(2))
            .sum();
        let mut distinct: Vec<f64> = ns.to_vec();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let warning = (distinct.len() < WELL_CONDITIONED_LEVELS && !matches!(mode, FitMode::PinnedGamma(_))).then(|| {
            format!(
                "only {} distinct n values: the ln n term is weakly identified",
                distinct.len()
            )
        });
        Ok(RateFit {
            label: label.to_string(),
            mode,
            alpha,
            gamma,
            intercept,
            residual: (sse / ns.len() as f64).sqrt(),
            samples: ns.len(),
            warning,
        })
    }
}

impl fmt::Display for RateFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: alpha = {:.4}, gamma = {:.4}, residual = {:.2e}, samples = {}",
            self.label, self.mode, self.alpha, self.gamma, self.residual, self.samples
        )?;
        if let Some(w) = &self.warning {
            write!(f, " (warning: {w})")?;
        }
        Ok(())
    }
}

/// Ordinary least squares with intercept, via centred normal equations.
fn least_squares<const K: usize>(xs: &[[f64; K]], ys: &[f64]) -> Result<(f64, [f64; K])> {
    let n = ys.len() as f64;
    let mut xm = [0.0; K];
    for x in xs {
        for i in 0..K {
            xm[i] += x[i] / n;
        }
    }
    let ym = ys.iter().sum::<f64>() / n;
    let mut a = [[0.0; K]; K];
    let mut b = [0.0; K];
    for (x, y) in xs.iter().zip(ys) {
        for i in 0..K {
            b[i] += (x[i] - xm[i]) * (y - ym);
            for j in 0..K {
                a[i][j] += (x[i] - xm[i]) * (x[j] - xm[j]);
            }
        }
    }
    let coef = match K {
        1 => {
            if !(a[0][0] > 0.0) {
                return Err(Error::InvalidArgument("rate fit needs at least two distinct n".into()));
            }
            let mut c = [0.0; K];
            c[0] = b[0] / a[0][0];
            c
        }
        2 => {
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            if !(det.abs() > 1e-12 * (a[0][0] * a[1][1]).abs().max(f64::MIN_POSITIVE)) {
                return Err(Error::InvalidArgument("rate fit design is singular".into()));
            }
            let mut c = [0.0; K];
            c[0] = (b[0] * a[1][1] - b[1] * a[0][1]) / det;
            c[1] = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
            c
        }
        _ => unreachable!("fits use one or two regressors"),
    };
    let intercept = ym - (0..K).map(|i| coef[i] * xm[i]).sum::<f64>();
    Ok((intercept, coef))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth(alpha: f64, gamma: f64, ns: &[f64]) -> Vec<f64> {
        ns.iter().map(|&n| 0.3 * (alpha * n).exp2() * n.powf(gamma)).collect()
    }

    #[test]
    fn joint_fit_recovers_exact_exponents() {
        let ns = [4.0, 5.0, 6.0, 7.0, 8.0];
        let fit = RateFit::fit("x", &ns, &synth(0.5, 1.0, &ns), FitMode::Joint).unwrap();
        assert!((fit.alpha - 0.5).abs() < 1e-10 && (fit.gamma - 1.0).abs() < 1e-9);
        assert!((fit.intercept - 0.3f64.ln()).abs() < 1e-9);
        assert!(fit.residual < 1e-12 && fit.warning.is_none());
    }

    #[test]
    fn pinned_fits_and_warning() {
        let ns = [6.0, 9.0, 12.0];
        let v = synth(0.25, 0.5, &ns);
        let a = RateFit::fit("a", &ns, &v, FitMode::PinnedAlpha(0.25)).unwrap();
        assert!((a.gamma - 0.5).abs() < 1e-10 && a.warning.is_some());
        let g = RateFit::fit("g", &ns, &v, FitMode::PinnedGamma(0.5)).unwrap();
        assert!((g.alpha - 0.25).abs() < 1e-10 && g.warning.is_none());
        assert!(RateFit::fit("j", &ns, &v, FitMode::Joint).unwrap().warning.is_some());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RateFit::fit("x", &[1.0, 2.0], &[1.0, 2.0], FitMode::Joint).is_err());
        assert!(RateFit::fit("x", &[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0], FitMode::Joint).is_err());
        assert!(RateFit::fit("x", &[2.0, 2.0, 2.0], &[1.0, 1.0, 1.0], FitMode::PinnedAlpha(0.0)).is_err());
    }
}
