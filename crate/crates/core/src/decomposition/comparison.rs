use std::collections::BTreeMap;

use crate::spectral::MultiIndex;
use crate::{Error, Result};

/// A finitely supported array `ε = {ε_s}` of nonnegative block weights.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BlockArray(BTreeMap<MultiIndex, f64>);

impl BlockArray {
    pub fn new() -> Self {
        BlockArray::default()
    }

    pub fn insert(&mut self, s: MultiIndex, value: f64) -> Result<()> {
        if !(value >= 0.0) || !s.is_nonnegative() {
            return Err(Error::InvalidArgument(format!(
                "block weights need nonnegative levels and values (got ε_{s} = {value})"
            )));
        }
        self.0.insert(s, value);
        Ok(())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut out = BlockArray::new();
        for (s, v) in pairs {
            out.insert(s, v)?;
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.0.iter()
    }
}


/// `(Σ_s ε_s^u 2^{‖s‖₁(u/v - 1)})^{1/u}` over the support of `ε`; `v` may be
/// infinite, `u` must be finite and ≥ 1.
pub fn comparison_sum(eps: &BlockArray, u: f64, v: f64) -> Result<f64> {
    if !(u >= 1.0) || u.is_infinite() || !(v >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ u < ∞ and 1 ≤ v ≤ ∞, got u = {u}, v = {v}"
        )));
    }
    let ratio = if v.is_infinite() { 0.0 } else { u / v };
    let total: f64 = eps
        .iter()
        .map(|(s, &e)| e.powf(u) * (s.l1() as f64 * (ratio - 1.0)).exp2())
        .sum();
    Ok(total.powf(1.0 / u))
}
