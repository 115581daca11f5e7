use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::{MultiIndex, TrigPoly};
use crate::{Error, Result};

/// Refuse grids with more values than this.
pub const GRID_VALUE_CAP: usize = 1 << 28;

/// Values of a function on the uniform tensor grid `x_m = (2π m_j / M_j)_j`,
/// stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct GridFn {
    dims: Vec<usize>,
    values: Vec<Complex64>,
    aliased: bool,
}

/// Result of [`GridFn::analyze`]: coefficients on the grid's natural
/// frequency box, plus the aliasing flag carried over from synthesis.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub poly: TrigPoly,
    pub aliased: bool,
}

/// `2 deg_j + 1` per axis: the smallest non-aliasing grid.
pub fn nyquist_dims(degrees: &[u64]) -> Vec<usize> {
    degrees.iter().map(|&d| 2 * d as usize + 1).collect()
}

/// `factor · (2 deg_j + 1)` per axis, or a single node along axes where the
/// polynomial is constant.
pub fn oversampled_dims(degrees: &[u64], factor: usize) -> Vec<usize> {
    degrees
        .iter()
        .map(|&d| {
            if d == 0 {
                1
            } else {
                factor.max(1) * (2 * d as usize + 1)
            }
        })
        .collect()
}

fn check_cap(dims: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &m in dims {
        if m == 0 {
            return Err(Error::InvalidArgument("grid sizes must be positive".into()));
        }
        total = total.checked_mul(m).ok_or(Error::GridTooLarge {
            values: usize::MAX,
            cap: GRID_VALUE_CAP,
        })?;
    }
    if total > GRID_VALUE_CAP {
        return Err(Error::GridTooLarge {
            values: total,
            cap: GRID_VALUE_CAP,
        });
    }
    Ok(total)
}

fn natural_frequency(i: usize, m: usize) -> i64 {
    if i <= (m - 1) / 2 {
        i as i64
    } else {
        i as i64 - m as i64
    }
}

fn fft_nd(values: &mut [Complex64], dims: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let total = values.len();
    let mut stride = total;
    for &m in dims {
        stride /= m;
        if m == 1 {
            continue;
        }
        let fft = planner.plan_fft(m, direction);
        let mut line = vec![Complex64::default(); m];
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let block = m * stride;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = values[base + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    values[base + i * stride] = *v;
                }
            }
        }
    }
}

impl GridFn {
    pub fn from_values(dims: &[usize], values: Vec<Complex64>) -> Result<Self> {
        let total = check_cap(dims)?;
        if values.len() != total {
            return Err(Error::InvalidArgument(format!(
                "expected {total} grid values, got {}",
                values.len()
            )));
        }
        Ok(GridFn {
            dims: dims.to_vec(),
            values,
            aliased: false,
        })
    }

    /// Samples `f` on the grid with sizes `dims` by inverse FFT. The result is
    /// flagged aliased unless `M_j > 2 deg_j(f)` on every axis.
    pub fn synthesize(f: &TrigPoly, dims: &[usize]) -> Result<Self> {
        if dims.len() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                found: dims.len(),
            });
        }
        let total = check_cap(dims)?;
        let aliased = f
            .degrees()
            .iter()
            .zip(dims)
            .any(|(&deg, &m)| 2 * deg as usize >= m);
        let mut values = vec![Complex64::default(); total];
        for (k, c) in f.terms() {
            let mut flat = 0usize;
            for (&kj, &m) in k.as_slice().iter().zip(dims) {
                flat = flat * m + kj.rem_euclid(m as i64) as usize;
            }
            values[flat] += c;
        }
        fft_nd(&mut values, dims, FftDirection::Inverse);
        Ok(GridFn {
            dims: dims.to_vec(),
            values,
            aliased,
        })
    }

    /// Discrete Fourier coefficients on the natural frequency box
    /// `-⌊M_j/2⌋ ≤ k_j ≤ ⌊(M_j-1)/2⌋`.
    pub fn analyze(&self) -> Analysis {
        let mut values = self.values.clone();
        fft_nd(&mut values, &self.dims, FftDirection::Forward);
        let norm = 1.0 / values.len() as f64;
        let d = self.dims.len();
        let mut terms = Vec::with_capacity(values.len());
        let mut idx = vec![0usize; d];
        for v in values {
            if v != Complex64::default() {
                let k: Vec<i64> = idx
                    .iter()
                    .zip(&self.dims)
                    .map(|(&i, &m)| natural_frequency(i, m))
                    .collect();
                terms.push((MultiIndex::new(k), v * norm));
            }
            for j in (0..d).rev() {
                idx[j] += 1;
                if idx[j] < self.dims[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        Analysis {
            poly: TrigPoly::from_terms(d, terms).expect("grid dimension is valid"),
            aliased: self.aliased,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_aliased(&self) -> bool {
        self.aliased
    }

    pub(crate) fn with_aliased(mut self, aliased: bool) -> Self {
        self.aliased = aliased;
        self
    }

    /// Coordinates of the node with row-major index `flat`.
    pub fn point(&self, mut flat: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.dims.len()];
        for j in (0..self.dims.len()).rev() {
            let m = self.dims[j];
            x[j] = TAU * (flat % m) as f64 / m as f64;
            flat /= m;
        }
        x
    }

    /// Mesh width per axis.
    pub fn spacing(&self) -> Vec<f64> {
        self.dims.iter().map(|&m| TAU / m as f64).collect()
    }

    pub fn map(&self, mut op: impl FnMut(Complex64) -> Complex64) -> Self {
        GridFn {
            dims: self.dims.clone(),
            values: self.values.iter().map(|&v| op(v)).collect(),
            aliased: self.aliased,
        }
    }

    pub fn pointwise_mul(&self, other: &GridFn) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::InvalidArgument("grid shapes differ".into()));
        }
        Ok(GridFn {
            dims: self.dims.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
            aliased: self.aliased || other.aliased,
        })
    }

    /// Largest modulus and its node. Ties within a relative `1e-12` go to the
    /// lexicographically first node.
    pub fn max_abs(&self) -> (f64, usize) {
        let mut best = (0.0f64, 0usize);
        for (i, v) in self.values.iter().enumerate() {
            let a = v.norm();
            if a > best.0 * (1.0 + 1e-12) && a > best.0 {
                best = (a, i);
            }
        }
        best
    }

    /// Rectangle-rule mean of `|g|^p`.
    pub fn mean_abs_pow(&self, p: f64) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        let sum: f64 = if p == 2.0 {
            self.values.iter().map(|v| v.norm_sqr()).sum()
        } else {
            self.values.iter().map(|v| v.norm().powf(p)).sum()
        };
        sum / self.values.len() as f64
    }

    /// Rectangle-rule mean of `|g|^p` using every other node along each axis
    /// of even length; `None` when no axis can be halved.
    pub fn mean_abs_pow_coarse(&self, p: f64) -> Option<f64> {
        if !self.dims.iter().any(|&m| m % 2 == 0 && m > 1) {
            return None;
        }
        let steps: Vec<usize> = self
            .dims
            .iter()
            .map(|&m| if m % 2 == 0 { 2 } else { 1 })
            .collect();
        let mut sum = 0.0;
        let mut count = 0usize;
        for (flat, v) in self.values.iter().enumerate() {
            let mut rest = flat;
            let mut keep = true;
            for j in (0..self.dims.len()).rev() {
                if !(rest % self.dims[j]).is_multiple_of(steps[j]) {
                    keep = false;
                    break;
                }
                rest /= self.dims[j];
            }
            if keep {
                sum += v.norm().powf(p);
                count += 1;
            }
        }
        Some(sum / count as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn round_trip_single_mode() {
        let f = TrigPoly::monomial(MultiIndex::from([3]), c(1.0, 0.0));
        let g = GridFn::synthesize(&f, &[8]).unwrap();
        assert!(!g.is_aliased());
        let back = g.analyze();
        assert!(!back.aliased);
        let back = back.poly.prune(1e-13);
        assert_eq!(back.len(), 1);
        assert!((back.coeff(&MultiIndex::from([3])) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn aliasing_is_flagged() {
        let f = TrigPoly::monomial(MultiIndex::from([5]), c(1.0, 0.0));
        let g = GridFn::synthesize(&f, &[8]).unwrap();
        assert!(g.is_aliased());
        assert!(g.analyze().aliased);
        let edge = TrigPoly::monomial(MultiIndex::from([4]), c(1.0, 0.0));
        assert!(GridFn::synthesize(&edge, &[8]).unwrap().is_aliased());
    }

    #[test]
    fn constant_analyzes_to_zero_mode() {
        let f = TrigPoly::constant(1, c(1.0, 0.0));
        let a = GridFn::synthesize(&f, &[4]).unwrap().analyze().poly;
        assert!((a.coeff(&MultiIndex::from([0])) - c(1.0, 0.0)).norm() < 1e-15);
        for k in [-2, -1, 1] {
            assert!(a.coeff(&MultiIndex::from([k])).norm() < 1e-15);
        }
    }

    #[test]
    fn synthesis_matches_pointwise_evaluation() {
        let f = TrigPoly::from_terms(
            2,
            [
                (MultiIndex::from([2, -1]), c(0.3, 0.4)),
                (MultiIndex::from([-3, 2]), c(-1.0, 0.2)),
            ],
        )
        .unwrap();
        let g = GridFn::synthesize(&f, &[7, 6]).unwrap();
        for flat in [0, 5, 17, 41] {
            let x = g.point(flat);
            assert!((g.values()[flat] - f.evaluate(&x).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn refuses_oversized_grids() {
        let f = TrigPoly::constant(2, c(1.0, 0.0));
        assert!(matches!(
            GridFn::synthesize(&f, &[1 << 15, 1 << 14]),
            Err(Error::GridTooLarge { .. })
        ));
    }
}
