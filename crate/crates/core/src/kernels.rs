//! Classical kernels, kept as per-axis coefficient profiles and materialized
//! as tensor products on demand.
//!
//! * Fejér `K_j(x) = Σ_{|k|≤j} (1 - |k|/j) e^{ikx} = sin²(jx/2) / (j sin²(x/2))`
//! * de la Vallée Poussin `V_m = 2K_{2m} - K_m`
//! * band kernels `A_0 = 1`, `A_1 = V_1 - 1`, `A_s = V_{2^{s-1}} - V_{2^{s-2}}`
//! * the Bernoulli-type multiplier of `F_r(x) = 1 + 2Σ k^{-r} cos(kx - rπ/2)`,
//!   which is only ever applied coefficientwise.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::spectral::{axis_level, check_dim, MultiIndex, TrigPoly};
use crate::{Error, Result};

/// Distance to a multiple of 2π below which the closed Fejér form switches to
/// the coefficient sum.
pub const FEJER_SINGULAR_BAND: f64 = 1e-6;

/// A kernel family with its per-axis parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    Fejer(Vec<u64>),
    ValleePoussin(Vec<u64>),
    Band(MultiIndex),
    /// Truncation of `F_r` to the box `|k_j| ≤ degree`.
    Bernoulli { r: f64, d: usize, degree: u64 },
}

impl KernelSpec {
    pub fn dim(&self) -> usize {
        match self {
            KernelSpec::Fejer(j) | KernelSpec::ValleePoussin(j) => j.len(),
            KernelSpec::Band(s) => s.dim(),
            KernelSpec::Bernoulli { d, .. } => *d,
        }
    }

    pub fn to_poly(&self) -> Result<TrigPoly> {
        match self {
            KernelSpec::Fejer(orders) => fejer_multi(orders),
            KernelSpec::ValleePoussin(orders) => vdp_multi(orders),
            KernelSpec::Band(s) => a_kernel(s.as_slice()),
            KernelSpec::Bernoulli { r, d, degree } => bernoulli_truncated(*r, *d, *degree),
        }
    }
}

/// `(1 - |k|/j)_+`.
pub fn fejer_coefficient(j: u64, k: i64) -> f64 {
    let a = k.unsigned_abs();
    if a >= j {
        0.0
    } else {
        1.0 - a as f64 / j as f64
    }
}

/// `V̂_m(k)`: 1 on `|k| ≤ m`, linear ramp down to 0 at `|k| = 2m`.
pub fn vdp_coefficient(m: u64, k: i64) -> f64 {
    let a = k.unsigned_abs();
    if a <= m {
        1.0
    } else if a < 2 * m {
        2.0 - a as f64 / m as f64
    } else {
        0.0
    }
}

/// `Â_s(k)` for a scalar level.
pub fn band_coefficient(s: u32, k: i64) -> f64 {
    match s {
        0 => {
            if k == 0 {
                1.0
            } else {
                0.0
            }
        }
        1 => {
            if k == 0 {
                0.0
            } else {
                vdp_coefficient(1, k)
            }
        }
        _ => vdp_coefficient(1 << (s - 1), k) - vdp_coefficient(1 << (s - 2), k),
    }
}

/// `Â_s(k) = Π_j Â_{s_j}(k_j)`.
pub fn band_multiplier(s: &MultiIndex, k: &MultiIndex) -> f64 {
    s.as_slice()
        .iter()
        .zip(k.as_slice())
        .map(|(&sj, &kj)| band_coefficient(sj as u32, kj))
        .product()
}

/// Levels `s` with `Â_s(k) ≠ 0` for a scalar frequency.
pub fn band_levels(k: i64) -> Vec<u32> {
    let l = axis_level(k);
    ((l - 1).max(0)..=l + 2)
        .map(|s| s as u32)
        .filter(|&s| band_coefficient(s, k) != 0.0)
        .collect()
}

fn check_orders(orders: &[u64]) -> Result<()> {
    check_dim(orders.len())?;
    if let Some(j) = orders.iter().find(|&&j| j < 1) {
        return Err(Error::InvalidArgument(format!("kernel order must be ≥ 1, got {j}")));
    }
    Ok(())
}

fn tensor(profiles: Vec<Vec<(i64, f64)>>) -> TrigPoly {
    let d = profiles.len();
    let mut terms = vec![(Vec::<i64>::new(), 1.0f64)];
    for axis in &profiles {
        let mut next = Vec::with_capacity(terms.len() * axis.len());
        for (prefix, v) in &terms {
            for &(k, c) in axis {
                let mut p = prefix.clone();
                p.push(k);
                next.push((p, v * c));
            }
        }
        terms = next;
    }
    TrigPoly::real_valued(
        d,
        terms
            .into_iter()
            .filter(|(_, v)| *v != 0.0)
            .map(|(k, v)| (MultiIndex::new(k), Complex64::new(v, 0.0))),
    )
    .expect("tensor kernels are even and real")
}

fn profile(radius: u64, coef: impl Fn(i64) -> f64) -> Vec<(i64, f64)> {
    let r = radius as i64;
    (-r..=r)
        .map(|k| (k, coef(k)))
        .filter(|(_, c)| *c != 0.0)
        .collect()
}

/// `K_j` on every axis of `T^d`.
pub fn fejer(j: u64, d: usize) -> Result<TrigPoly> {
    fejer_multi(&vec![j; d])
}

/// `K_j(x) = Π_i K_{j_i}(x_i)`.
pub fn fejer_multi(orders: &[u64]) -> Result<TrigPoly> {
    check_orders(orders)?;
    Ok(tensor(
        orders
            .iter()
            .map(|&j| profile(j, |k| fejer_coefficient(j, k)))
            .collect(),
    ))
}

/// Closed form `sin²(jx/2) / (j sin²(x/2))`, switching to the coefficient sum
/// within [`FEJER_SINGULAR_BAND`] of the singular points.
pub fn fejer_value(j: u64, x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r.min(TAU - r) < FEJER_SINGULAR_BAND {
        let mut acc = 1.0;
        for k in 1..j {
            acc += 2.0 * fejer_coefficient(j, k as i64) * (k as f64 * x).cos();
        }
        return acc;
    }
    let num = (j as f64 * x / 2.0).sin();
    let den = (x / 2.0).sin();
    num * num / (j as f64 * den * den)
}

/// Product of closed-form Fejér values.
pub fn fejer_value_multi(orders: &[u64], x: &[f64]) -> f64 {
    orders.iter().zip(x).map(|(&j, &xi)| fejer_value(j, xi)).product()
}

pub fn vdp(m: u64, d: usize) -> Result<TrigPoly> {
    vdp_multi(&vec![m; d])
}

pub fn vdp_multi(orders: &[u64]) -> Result<TrigPoly> {
    check_orders(orders)?;
    Ok(tensor(
        orders
            .iter()
            .map(|&m| profile(2 * m, |k| vdp_coefficient(m, k)))
            .collect(),
    ))
}

/// `A_s(x) = Π_j A_{s_j}(x_j)`.
pub fn a_kernel(s: &[i64]) -> Result<TrigPoly> {
    check_dim(s.len())?;
    if let Some(v) = s.iter().find(|&&v| !(0..=40).contains(&v)) {
        return Err(Error::InvalidArgument(format!("invalid level entry {v}")));
    }
    Ok(tensor(
        s.iter()
            .map(|&sj| {
                let radius = if sj == 0 { 0 } else { 1u64 << sj };
                profile(radius, |k| band_coefficient(sj as u32, k))
            })
            .collect(),
    ))
}

/// `F̂_r(k) = Π_j φ(k_j)` with `φ(0) = 1`, `φ(k) = |k|^{-r} e^{-i sign(k) rπ/2}`.
pub fn bernoulli_multiplier(r: f64, k: &MultiIndex) -> Complex64 {
    k.as_slice()
        .iter()
        .map(|&kj| {
            if kj == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                let phase = -(kj.signum() as f64) * r * PI / 2.0;
                Complex64::from_polar((kj.unsigned_abs() as f64).powf(-r), phase)
            }
        })
        .product()
}

fn bernoulli_truncated(r: f64, d: usize, degree: u64) -> Result<TrigPoly> {
    check_dim(d)?;
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("smoothness r must be > 0, got {r}")));
    }
    let axis: Vec<i64> = (-(degree as i64)..=degree as i64).collect();
    let mut terms = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let k = MultiIndex::new(idx.iter().map(|&i| axis[i]).collect::<Vec<_>>());
        terms.push((k.clone(), bernoulli_multiplier(r, &k)));
        let mut j = d;
        loop {
            if j == 0 {
                return TrigPoly::real_valued(d, terms);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < axis.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coeffs_1d(p: &TrigPoly, range: std::ops::RangeInclusive<i64>) -> Vec<f64> {
        range.map(|k| p.coeff(&MultiIndex::from([k])).re).collect()
    }

    #[test]
    fn fejer_examples() {
        let k1 = fejer(1, 1).unwrap();
        assert_eq!(k1.len(), 1);
        assert_eq!(k1.coeff(&MultiIndex::from([0])).re, 1.0);
        let k4 = fejer(4, 1).unwrap();
        assert!((k4.evaluate(&[0.0]).unwrap().re - 4.0).abs() < 1e-14);
        let k2 = fejer(2, 1).unwrap();
        assert_eq!(coeffs_1d(&k2, -1..=1), vec![0.5, 1.0, 0.5]);
        assert!(k2.evaluate(&[PI]).unwrap().norm() < 1e-15);
        assert!(fejer(0, 1).is_err());
    }

    #[test]
    fn closed_form_matches_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for j in [1u64, 3, 16, 255] {
            let poly = fejer(j, 1).unwrap();
            for _ in 0..50 {
                let x: f64 = rng.random::<f64>() * TAU;
                let diff = (poly.evaluate(&[x]).unwrap().re - fejer_value(j, x)).abs();
                assert!(diff < 1e-10, "j={j} x={x} diff={diff}");
            }
            assert!((fejer_value(j, 1e-9) - j as f64).abs() < 1e-6 * j as f64);
            assert!((fejer_value(j, TAU) - j as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn vdp_and_band_examples() {
        assert_eq!(coeffs_1d(&vdp(1, 1).unwrap(), -2..=2), vec![0.0, 1.0, 1.0, 1.0, 0.0]);
        let a1 = a_kernel(&[1]).unwrap();
        assert_eq!(coeffs_1d(&a1, -2..=2), vec![0.0, 1.0, 0.0, 1.0, 0.0]);
        for k in -6..=6 {
            let v = band_coefficient(2, k);
            match k.abs() {
                2 => assert_eq!(v, 1.0),
                3 => assert_eq!(v, 0.5),
                0 | 1 => assert_eq!(v, 0.0),
                _ => assert_eq!(v, 0.0),
            }
        }
    }

    #[test]
    fn band_support_and_levels() {
        for s in 2..8u32 {
            for k in -300i64..=300 {
                let v = band_coefficient(s, k);
                if k.unsigned_abs() <= 1 << (s - 2) || k.unsigned_abs() >= 1 << s {
                    assert_eq!(v, 0.0, "s={s} k={k}");
                }
            }
        }
        for k in -300i64..=300 {
            let listed = band_levels(k);
            for s in 0..12u32 {
                assert_eq!(listed.contains(&s), band_coefficient(s, k) != 0.0, "k={k} s={s}");
            }
        }
    }

    #[test]
    fn band_kernels_telescope() {
        for big_s in 2..9u32 {
            for k in -600i64..=600 {
                let sum: f64 = (0..=big_s).map(|s| band_coefficient(s, k)).sum();
                assert_eq!(sum, vdp_coefficient(1 << (big_s - 1), k), "S={big_s} k={k}");
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        let r = 2.0;
        assert_eq!(bernoulli_multiplier(r, &MultiIndex::from([0])), Complex64::new(1.0, 0.0));
        let p = bernoulli_multiplier(r, &MultiIndex::from([2]));
        assert!((p - Complex64::new(-0.25, 0.0)).norm() < 1e-15);
        let m = bernoulli_multiplier(r, &MultiIndex::from([-2]));
        assert!((m - Complex64::new(-0.25, 0.0)).norm() < 1e-15);
        let q = bernoulli_multiplier(1.5, &MultiIndex::from([3, -2]));
        let q_conj = bernoulli_multiplier(1.5, &MultiIndex::from([-3, 2]));
        assert!((q - q_conj.conj()).norm() < 1e-15);
    }

    #[test]
    fn truncated_bernoulli_matches_cosine_series() {
        let r = 1.5;
        let f = KernelSpec::Bernoulli { r, d: 1, degree: 12 }.to_poly().unwrap();
        let x = 0.9f64;
        let mut series = 1.0;
        for k in 1..=12 {
            series += 2.0 * (k as f64).powf(-r) * (k as f64 * x - r * PI / 2.0).cos();
        }
        assert!((f.evaluate(&[x]).unwrap().re - series).abs() < 1e-12);
    }
}
