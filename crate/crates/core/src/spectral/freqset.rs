use super::{check_dim, MultiIndex};
use crate::{Error, Result};

/// How a [`FreqSet`] was built.
#[derive(Clone, Debug, PartialEq)]
pub enum FreqSetKind {
    /// Dyadic block `ρ(s)`.
    Rho(MultiIndex),
    /// Step hyperbolic cross `Q_n`.
    HyperbolicCross(u32),
    /// Box `Π(N, d)`.
    Box(Vec<u32>),
    Custom,
}

/// A finite subset of `Z^d`, kept sorted lexicographically and free of
/// duplicates.
#[derive(Clone, Debug, PartialEq)]
pub struct FreqSet {
    dim: usize,
    indices: Vec<MultiIndex>,
    kind: FreqSetKind,
}

/// Frequencies of the one-dimensional dyadic block of level `s`, ascending.
pub fn rho_axis(s: u32) -> Vec<i64> {
    if s == 0 {
        return vec![0];
    }
    let lo = 1i64 << (s - 1);
    let hi = (1i64 << s) - 1;
    (-hi..=-lo).chain(lo..=hi).collect()
}

fn cartesian(axes: &[Vec<i64>]) -> Vec<MultiIndex> {
    let total: usize = axes.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    if total == 0 {
        return out;
    }
    let mut pos = vec![0usize; axes.len()];
    loop {
        out.push(MultiIndex::new(
            pos.iter().zip(axes).map(|(&p, a)| a[p]).collect::<Vec<_>>(),
        ));
        let mut j = axes.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < axes[j].len() {
                break;
            }
            pos[j] = 0;
        }
    }
}

fn levels_from(s: &[i64]) -> Result<Vec<u32>> {
    s.iter()
        .map(|&v| {
            if v < 0 {
                Err(Error::InvalidArgument(format!("negative level entry {v}")))
            } else if v > 40 {
                Err(Error::InvalidArgument(format!("level entry {v} too large")))
            } else {
                Ok(v as u32)
            }
        })
        .collect()
}

impl FreqSet {
    /// The dyadic block `ρ(s) = {k : [2^{s_j-1}] ≤ |k_j| < 2^{s_j}}`.
    pub fn rho(s: &[i64]) -> Result<Self> {
        check_dim(s.len())?;
        let levels = levels_from(s)?;
        let axes: Vec<Vec<i64>> = levels.iter().map(|&l| rho_axis(l)).collect();
        Ok(FreqSet {
            dim: s.len(),
            indices: cartesian(&axes),
            kind: FreqSetKind::Rho(MultiIndex::new(s.to_vec())),
        })
    }

    /// The step hyperbolic cross `Q_n = ∪_{‖s‖₁ ≤ n} ρ(s)`.
    pub fn hyperbolic_cross(n: u32, d: usize) -> Result<Self> {
        check_dim(d)?;
        let mut indices = Vec::new();
        for total in 0..=n {
            for s in compositions(total, d) {
                let axes: Vec<Vec<i64>> =
                    s.as_slice().iter().map(|&l| rho_axis(l as u32)).collect();
                indices.extend(cartesian(&axes));
            }
        }
        indices.sort();
        Ok(FreqSet {
            dim: d,
            indices,
            kind: FreqSetKind::HyperbolicCross(n),
        })
    }

    /// The box `Π(N, d) = {k : |k_j| ≤ N_j}`.
    pub fn boxed(n: &[u32]) -> Result<Self> {
        check_dim(n.len())?;
        let axes: Vec<Vec<i64>> = n
            .iter()
            .map(|&m| (-(m as i64)..=m as i64).collect())
            .collect();
        Ok(FreqSet {
            dim: n.len(),
            indices: cartesian(&axes),
            kind: FreqSetKind::Box(n.to_vec()),
        })
    }

    pub fn custom(d: usize, indices: impl IntoIterator<Item = MultiIndex>) -> Result<Self> {
        check_dim(d)?;
        let mut indices: Vec<MultiIndex> = indices.into_iter().collect();
        if let Some(bad) = indices.iter().find(|k| k.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        indices.sort();
        indices.dedup();
        Ok(FreqSet {
            dim: d,
            indices,
            kind: FreqSetKind::Custom,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &FreqSetKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.indices.iter()
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        self.indices.binary_search(k).is_ok()
    }

    /// Largest `|k_j|` over the set, per axis.
    pub fn max_abs(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for k in &self.indices {
            for (o, v) in out.iter_mut().zip(k.as_slice()) {
                *o = (*o).max(v.unsigned_abs());
            }
        }
        out
    }

    pub fn intersects(&self, other: &FreqSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().any(|k| large.contains(k))
    }
}

/// All `s ∈ N_0^d` with `‖s‖₁ = n`, in lexicographic order.
pub fn compositions(n: u32, d: usize) -> Vec<MultiIndex> {
    fn rec(remaining: i64, slots: usize, prefix: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultiIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for v in 0..=remaining {
            prefix.push(v);
            rec(remaining - v, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(n as i64, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// `ϑ(N) = Π_j (2N_j + 1)`.
pub fn box_cardinality(n: &[u32]) -> u64 {
    n.iter().map(|&m| 2 * m as u64 + 1).product()
}

/// `S_n = min_{‖s‖₁ = n} |ρ(s)|`, by enumeration.
pub fn min_block_size(n: u32, d: usize) -> usize {
    compositions(n, d)
        .iter()
        .map(|s| {
            s.as_slice()
                .iter()
                .map(|&l| rho_axis(l as u32).len())
                .product::<usize>()
        })
        .min()
        .unwrap_or(0)
}

/// The level set `Y_{n,3}`: levels whose coordinates are positive multiples
/// of 3 summing to `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerLevels {
    pub levels: Vec<MultiIndex>,
    /// Set when `n` is not admissible; `levels` is then empty.
    pub warning: Option<String>,
}

pub fn build_y(n: u32, d: usize) -> LayerLevels {
    if d == 0 {
        return LayerLevels {
            levels: Vec::new(),
            warning: Some("dimension must be positive".into()),
        };
    }
    if !n.is_multiple_of(3) || (n as usize) < 3 * d {
        return LayerLevels {
            levels: Vec::new(),
            warning: Some(format!(
                "n = {n} must be divisible by 3 and at least 3d = {}",
                3 * d
            )),
        };
    }
    let levels = compositions(n / 3 - d as u32, d)
        .into_iter()
        .map(|c| MultiIndex::new(c.as_slice().iter().map(|&v| 3 * (v + 1)).collect::<Vec<_>>()))
        .collect();
    LayerLevels {
        levels,
        warning: None,
    }
}
