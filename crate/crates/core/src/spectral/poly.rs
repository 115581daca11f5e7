use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{check_dim, FreqSet, MultiIndex};
use crate::{Error, Result};

/// Maximum Hermitian-symmetry violation accepted when flagging a polynomial
/// as real-valued (relative to the largest coefficient).
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// A trigonometric polynomial `t(x) = Σ_k ĉ(k) e^{i(k,x)}` with finitely
/// many nonzero coefficients, stored sparse.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
    real: bool,
}

impl TrigPoly {
    pub fn zero(d: usize) -> Self {
        TrigPoly {
            dim: d,
            coeffs: BTreeMap::new(),
            real: false,
        }
    }

    pub fn constant(d: usize, c: Complex64) -> Self {
        let mut p = TrigPoly::zero(d);
        p.add_term(MultiIndex::zeros(d), c);
        p
    }

    pub fn monomial(k: MultiIndex, c: Complex64) -> Self {
        let mut p = TrigPoly::zero(k.dim());
        p.add_term(k, c);
        p
    }

    /// Builds a polynomial from `(k, ĉ(k))` pairs, summing repeated frequencies.
    pub fn from_terms(
        d: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        check_dim(d)?;
        let mut p = TrigPoly::zero(d);
        for (k, c) in terms {
            if k.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: k.dim(),
                });
            }
            p.add_term(k, c);
        }
        Ok(p)
    }

    /// Builds a real-valued polynomial. Coefficients must satisfy
    /// `ĉ(-k) = conj(ĉ(k))` within [`HERMITIAN_TOLERANCE`]; they are then
    /// symmetrized exactly.
    pub fn real_valued(
        d: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        let mut p = TrigPoly::from_terms(d, terms)?;
        p.make_real()?;
        Ok(p)
    }

    /// Flags the polynomial real-valued after enforcing Hermitian symmetry.
    pub fn make_real(&mut self) -> Result<()> {
        let scale = self.max_abs_coeff().max(f64::MIN_POSITIVE);
        let mut violation = 0.0f64;
        for (k, c) in &self.coeffs {
            let mirror = self.coeff(&k.neg());
            violation = violation.max((mirror - c.conj()).norm());
        }
        if violation > HERMITIAN_TOLERANCE * scale.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "coefficients violate Hermitian symmetry by {violation:.3e}"
            )));
        }
        let keys: Vec<MultiIndex> = self.coeffs.keys().cloned().collect();
        let mut sym = BTreeMap::new();
        for k in keys {
            let c = self.coeff(&k);
            let m = self.coeff(&k.neg());
            let v = (c + m.conj()) * 0.5;
            if v != Complex64::new(0.0, 0.0) {
                sym.insert(k, v);
            }
        }
        self.coeffs = sym;
        self.real = true;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// No stored coefficients; see [`TrigPoly::is_zero`] for the value test.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.norm() == 0.0)
    }

    pub fn coeff(&self, k: &MultiIndex) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, k: MultiIndex, c: Complex64) {
        debug_assert_eq!(k.dim(), self.dim);
        *self.coeffs.entry(k).or_default() += c;
        self.real = false;
    }

    pub fn support(&self) -> FreqSet {
        FreqSet::custom(
            self.dim,
            self.coeffs
                .iter()
                .filter(|(_, c)| c.norm() != 0.0)
                .map(|(k, _)| k.clone()),
        )
        .expect("dimension already validated")
    }

    /// Largest `|k_j|` over the support, per axis.
    pub fn degrees(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for k in self.coeffs.keys() {
            for (o, v) in out.iter_mut().zip(k.as_slice()) {
                *o = (*o).max(v.unsigned_abs());
            }
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let real = self.real && c.im == 0.0;
        TrigPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            real,
        }
    }

    pub fn add(&self, other: &TrigPoly) -> Result<Self> {
        self.check_same_dim(other.dim)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            *out.coeffs.entry(k.clone()).or_default() += c;
        }
        out.real = self.real && other.real;
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Keeps the coefficients whose frequency satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> Self {
        TrigPoly {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
            real: false,
        }
    }

    /// Coefficientwise multiplier `ĉ(k) ↦ m(k) ĉ(k)`; exact zeros are dropped.
    pub fn multiply(&self, mut m: impl FnMut(&MultiIndex) -> Complex64) -> Self {
        TrigPoly {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(k, c)| {
                    let v = c * m(k);
                    (v != Complex64::new(0.0, 0.0)).then(|| (k.clone(), v))
                })
                .collect(),
            real: false,
        }
    }

    /// `t(· - x0)`.
    pub fn shift(&self, x0: &[f64]) -> Self {
        let mut out = self.multiply(|k| Complex64::from_polar(1.0, -k.dot(x0)));
        out.real = self.real;
        out
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        TrigPoly {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
            real: self.real,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        self.check_same_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            acc += c * Complex64::from_polar(1.0, k.dot(x));
        }
        acc
    }

    /// Evaluates at many points, using per-axis tables of `e^{i k x_j}`.
    pub fn evaluate_many(&self, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
        for p in points {
            self.check_same_dim(p.len())?;
        }
        let degrees = self.degrees();
        let flat: Vec<(Vec<usize>, Complex64)> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let idx = k
                    .as_slice()
                    .iter()
                    .zip(&degrees)
                    .map(|(&v, &deg)| (v + deg as i64) as usize)
                    .collect();
                (idx, *c)
            })
            .collect();
        let mut tables: Vec<Vec<Complex64>> = degrees
            .iter()
            .map(|&deg| vec![Complex64::default(); 2 * deg as usize + 1])
            .collect();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            for ((table, &deg), &xj) in tables.iter_mut().zip(&degrees).zip(p) {
                let deg = deg as i64;
                for (i, slot) in table.iter_mut().enumerate() {
                    *slot = Complex64::from_polar(1.0, (i as i64 - deg) as f64 * xj);
                }
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, c) in &flat {
                let mut term = *c;
                for (table, &i) in tables.iter().zip(idx) {
                    term *= table[i];
                }
                acc += term;
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn check_same_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}
