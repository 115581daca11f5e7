use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::check_dim;
use crate::Result;

/// Where sample points come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointFamily {
    /// Independent uniform points from a seeded generator.
    #[default]
    UniformRandom,
    /// Rank-1 lattice with a Korobov-type generating vector.
    Lattice,
    /// The first `m` nodes (lexicographically) of a uniform tensor grid.
    TensorGrid,
}

impl std::str::FromStr for PointFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-random" | "random" => Ok(PointFamily::UniformRandom),
            "lattice" => Ok(PointFamily::Lattice),
            "tensor-grid" | "grid" => Ok(PointFamily::TensorGrid),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown point family `{other}`"
            ))),
        }
    }
}

/// `m` points of `[0, 2π)^d`, coordinates reduced mod 2π.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PointSet {
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        check_dim(d)?;
        let points = points
            .into_iter()
            .map(|p| {
                if p.len() != d {
                    Err(crate::Error::DimensionMismatch {
                        expected: d,
                        found: p.len(),
                    })
                } else {
                    Ok(p.into_iter().map(|x| x.rem_euclid(TAU)).collect())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet { dim: d, points })
    }

    pub fn empty(d: usize) -> Result<Self> {
        PointSet::new(d, Vec::new())
    }

    pub fn generate(family: PointFamily, m: usize, d: usize, seed: u64) -> Result<Self> {
        match family {
            PointFamily::UniformRandom => PointSet::uniform_random(m, d, seed),
            PointFamily::Lattice => PointSet::lattice(m, d),
            PointFamily::TensorGrid => PointSet::tensor_grid(m, d),
        }
    }

    pub fn uniform_random(m: usize, d: usize, seed: u64) -> Result<Self> {
        check_dim(d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..m)
            .map(|_| (0..d).map(|_| rng.random::<f64>() * TAU).collect())
            .collect();
        PointSet::new(d, points)
    }

    /// Rank-1 lattice `x^ν = 2π {ν z / m}` with `z = (1, a, a², …) mod m` and
    /// `a` the integer nearest `m/φ` that is coprime to `m`.
    pub fn lattice(m: usize, d: usize) -> Result<Self> {
        check_dim(d)?;
        if m == 0 {
            return PointSet::empty(d);
        }
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let mut a = ((m as f64 / golden).round() as usize).max(1);
        while m > 1 && gcd(a, m) != 1 {
            a += 1;
        }
        let mut z = vec![1usize; d];
        for j in 1..d {
            z[j] = (z[j - 1] * a) % m.max(1);
        }
        let points = (0..m)
            .map(|nu| {
                z.iter()
                    .map(|&zj| TAU * ((nu * zj) % m) as f64 / m as f64)
                    .collect()
            })
            .collect();
        PointSet::new(d, points)
    }

    pub fn tensor_grid(m: usize, d: usize) -> Result<Self> {
        check_dim(d)?;
        let mut per_axis = 1usize;
        while per_axis.pow(d as u32) < m {
            per_axis += 1;
        }
        let mut points = Vec::with_capacity(m);
        let mut idx = vec![0usize; d];
        while points.len() < m {
            points.push(
                idx.iter()
                    .map(|&i| TAU * i as f64 / per_axis as f64)
                    .collect(),
            );
            for j in (0..d).rev() {
                idx[j] += 1;
                if idx[j] < per_axis {
                    break;
                }
                idx[j] = 0;
            }
        }
        PointSet::new(d, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}
