use std::fmt;
use std::ops::Index;

/// A point of `Z^d`: a frequency `k` or a dyadic level `s`.
///
/// Ordering is lexicographic, which fixes every iteration and tie-break over
/// frequency and level sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<i64>>) -> Self {
        MultiIndex(entries.into())
    }

    pub fn zeros(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `Σ_j |e_j|`; for a level vector this is `‖s‖₁`.
    pub fn l1(&self) -> i64 {
        self.0.iter().map(|v| v.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }

    pub fn neg(&self) -> Self {
        MultiIndex(self.0.iter().map(|v| -v).collect())
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&k, &x)| k as f64 * x).sum()
    }
}

impl Index<usize> for MultiIndex {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Dyadic level of a single frequency: 0 for `k = 0`, otherwise the `s` with
/// `2^{s-1} ≤ |k| < 2^s`.
pub fn axis_level(k: i64) -> i64 {
    if k == 0 {
        0
    } else {
        64 - k.unsigned_abs().leading_zeros() as i64
    }
}

/// The unique level `s` with `k ∈ ρ(s)`.
pub fn frequency_level(k: &MultiIndex) -> MultiIndex {
    MultiIndex(k.as_slice().iter().map(|&v| axis_level(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_levels() {
        assert_eq!(axis_level(0), 0);
        assert_eq!(axis_level(1), 1);
        assert_eq!(axis_level(-1), 1);
        assert_eq!(axis_level(3), 2);
        assert_eq!(axis_level(4), 3);
        assert_eq!(axis_level(-7), 3);
        assert_eq!(axis_level(8), 4);
    }

    #[test]
    fn lexicographic_order() {
        let a = MultiIndex::from([0, 5]);
        let b = MultiIndex::from([1, -3]);
        assert!(a < b);
        assert_eq!(b.l1(), 4);
        assert_eq!(b.to_string(), "(1,-3)");
    }
}
