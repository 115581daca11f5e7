use num_complex::Complex64;

use crate::spectral::{oversampled_dims, GridFn, TrigPoly};
use crate::{Error, Result};

/// Oversampling factor per axis (relative to `2 deg + 1`) used for grid
/// quadrature unless a request says otherwise.
pub const DEFAULT_OVERSAMPLE: usize = 8;

/// Largest grid, in values, that routine norm evaluations will allocate.
pub const WORKING_GRID_BUDGET: usize = 1 << 23;

/// The largest oversampling factor `≤ requested` whose grid for `degrees`
/// fits in [`WORKING_GRID_BUDGET`]. Never below 2.
pub fn budget_oversample(degrees: &[u64], requested: usize) -> usize {
    let mut factor = requested.max(2);
    while factor > 2 && oversampled_dims(degrees, factor).iter().product::<usize>() > WORKING_GRID_BUDGET {
        factor -= 1;
    }
    factor
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    /// `((2π)^{-d} ∫ |f|^p)^{1/p}`, `1 ≤ p < ∞`.
    Lp(f64),
    Sup,
    /// Wiener norm `Σ_k |f̂(k)|`.
    A,
    /// `(Σ_k |f̂(k)|^β)^{1/β}`, `0 < β ≤ 1`.
    ABeta(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormRequest {
    pub kind: NormKind,
    pub oversample: usize,
}

impl NormRequest {
    pub fn new(kind: NormKind) -> Self {
        NormRequest {
            kind,
            oversample: DEFAULT_OVERSAMPLE,
        }
    }

    pub fn lp(p: f64) -> Self {
        Self::new(NormKind::Lp(p))
    }

    pub fn sup() -> Self {
        Self::new(NormKind::Sup)
    }

    pub fn with_oversample(mut self, factor: usize) -> Self {
        self.oversample = factor.max(1);
        self
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            NormKind::Lp(p) if !(p >= 1.0) || p.is_infinite() => Err(Error::InvalidArgument(
                format!("L_p needs 1 ≤ p < ∞ (got {p}); use A_beta for quasi-norms"),
            )),
            NormKind::ABeta(b) if !(b > 0.0 && b <= 1.0) => Err(Error::InvalidArgument(
                format!("A_beta needs 0 < beta ≤ 1, got {b}"),
            )),
            _ => Ok(()),
        }
    }
}

/// An `L_p` value together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpEstimate {
    pub value: f64,
    /// True when the quadrature is exact (Parseval, or an even integer `p`
    /// on a grid that resolves degree `p·deg`).
    pub exact: bool,
    /// `|Q_M - Q_{M/2}|` for rectangle-rule values, when the grid can be halved.
    pub refinement_delta: Option<f64>,
}

/// Grid sup-norm estimate: a certified lower bound (grid maximum) and a
/// golden-section polish around the grid argmax.
#[derive(Clone, Debug, PartialEq)]
pub struct SupEstimate {
    pub grid_max: f64,
    pub grid_argmax: Vec<f64>,
    pub polished: f64,
    pub polished_at: Vec<f64>,
}

impl SupEstimate {
    /// The larger of the two estimates; still a lower bound on the true sup.
    pub fn value(&self) -> f64 {
        self.grid_max.max(self.polished)
    }
}

pub fn a_norm(f: &TrigPoly) -> f64 {
    f.terms().map(|(_, c)| c.norm()).sum()
}

pub fn a_beta_norm(f: &TrigPoly, beta: f64) -> Result<f64> {
    NormRequest::new(NormKind::ABeta(beta)).validate()?;
    if beta == 1.0 {
        return Ok(a_norm(f));
    }
    let s: f64 = f.terms().map(|(_, c)| c.norm().powf(beta)).sum();
    Ok(s.powf(1.0 / beta))
}

pub fn norm(f: &TrigPoly, req: &NormRequest) -> Result<f64> {
    req.validate()?;
    match req.kind {
        NormKind::A => Ok(a_norm(f)),
        NormKind::ABeta(b) => a_beta_norm(f, b),
        NormKind::Lp(p) => Ok(lp_norm_detailed(f, p, req.oversample)?.value),
        NormKind::Sup => Ok(sup_norm(f, req.oversample)?.value()),
    }
}

pub fn lp_norm(f: &TrigPoly, p: f64) -> Result<f64> {
    Ok(lp_norm_detailed(f, p, DEFAULT_OVERSAMPLE)?.value)
}

pub fn lp_norm_detailed(f: &TrigPoly, p: f64, oversample: usize) -> Result<LpEstimate> {
    NormRequest::lp(p).validate()?;
    if f.is_zero() {
        return Ok(LpEstimate {
            value: 0.0,
            exact: true,
            refinement_delta: None,
        });
    }
    if p == 2.0 {
        let s: f64 = f.terms().map(|(_, c)| c.norm_sqr()).sum();
        return Ok(LpEstimate {
            value: s.sqrt(),
            exact: true,
            refinement_delta: None,
        });
    }
    let degrees = f.degrees();
    let mut dims = oversampled_dims(&degrees, oversample);
    let even = p.fract() == 0.0 && (p as u64).is_multiple_of(2);
    if even {
        for (m, &deg) in dims.iter_mut().zip(&degrees) {
            *m = (*m).max(p as usize * deg as usize + 1);
        }
    }
    let grid = GridFn::synthesize(f, &dims)?;
    let mean = grid.mean_abs_pow(p);
    let coarse = if even {
        None
    } else {
        grid.mean_abs_pow_coarse(p)
    };
    Ok(LpEstimate {
        value: mean.powf(1.0 / p),
        exact: even,
        refinement_delta: coarse.map(|c| (c.powf(1.0 / p) - mean.powf(1.0 / p)).abs()),
    })
}

/// `L_p` or sup norm of grid values; the A-type norms need coefficients.
pub fn norm_grid(g: &GridFn, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Lp(p) => {
            NormRequest::lp(p).validate()?;
            Ok(g.mean_abs_pow(p).powf(1.0 / p))
        }
        NormKind::Sup => Ok(g.max_abs().0),
        NormKind::A | NormKind::ABeta(_) => {
            let poly = g.analyze().poly;
            norm(&poly, &NormRequest::new(kind))
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn golden_max(mut lo: f64, mut hi: f64, mut eval: impl FnMut(f64) -> f64) -> (f64, f64) {
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = eval(a);
    let mut fb = eval(b);
    for _ in 0..40 {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = eval(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = eval(b);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Sup norm from the oversampled grid plus one coordinate-wise golden-section
/// polish of the grid argmax (within one mesh width).
pub fn sup_norm(f: &TrigPoly, oversample: usize) -> Result<SupEstimate> {
    let d = f.dim();
    if f.is_zero() {
        return Ok(SupEstimate {
            grid_max: 0.0,
            grid_argmax: vec![0.0; d],
            polished: 0.0,
            polished_at: vec![0.0; d],
        });
    }
    let dims = oversampled_dims(&f.degrees(), oversample);
    let grid = GridFn::synthesize(f, &dims)?;
    let (grid_max, flat) = grid.max_abs();
    let grid_argmax = grid.point(flat);
    let spacing = grid.spacing();
    let mut x = grid_argmax.clone();
    let mut best = grid_max;
    let terms: Vec<(Vec<f64>, Complex64)> = f
        .terms()
        .map(|(k, c)| (k.as_slice().iter().map(|&v| v as f64).collect(), *c))
        .collect();
    let eval = |x: &[f64]| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &terms {
            let phase: f64 = k.iter().zip(x).map(|(a, b)| a * b).sum();
            acc += c * Complex64::from_polar(1.0, phase);
        }
        acc.norm()
    };
    for j in 0..d {
        if dims[j] == 1 {
            continue;
        }
        let centre = x[j];
        let mut probe = x.clone();
        let (arg, val) = golden_max(centre - spacing[j], centre + spacing[j], |t| {
            probe[j] = t;
            eval(&probe)
        });
        if val > best {
            best = val;
            x[j] = arg.rem_euclid(std::f64::consts::TAU);
        }
    }
    Ok(SupEstimate {
        grid_max,
        grid_argmax,
        polished: best,
        polished_at: x,
    })
}
