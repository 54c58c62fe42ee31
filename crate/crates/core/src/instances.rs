//! Instance generators.
//!
//! All randomness comes from [`seeded_rng`]: xoshiro256++ whose 256-bit state
//! is filled from the 64-bit seed by SplitMix64 (increment
//! `0x9e3779b97f4a7c15`, output mixers `0xbf58476d1ce4e5b9` and
//! `0x94d049bb133111eb`). Random signs take the low bit of one `next_u64`
//! draw per edge, bit 0 meaning `+1`, with edges visited in lexicographic
//! `(i, j)` order. Any implementation following these rules reproduces the
//! same instances.

use std::path::PathBuf;

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SignedWeightedGraph, MAX_VERTICES};
use crate::io::read_instance;

pub type InstanceRng = Xoshiro256PlusPlus;

pub fn seeded_rng(seed: u64) -> InstanceRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

fn sign_from_draw(draw: u64) -> f64 {
    if draw & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_range(what: &str, n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_VERTICES {
        return Err(Error::input(format!(
            "{what} must be in {min}..={MAX_VERTICES}, got {n}"
        )));
    }
    Ok(())
}

/// `K_n` with independent uniform `±1` weights.
pub fn random_pm1_complete(n: usize, seed: u64) -> Result<SignedWeightedGraph> {
    check_range("n", n, 2)?;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            edges.push((i, j, sign_from_draw(rng.next_u64())));
        }
    }
    SignedWeightedGraph::new(n, edges)
}

/// `K_n` with weights uniform in `[-1, 1)`, zero draws redrawn.
pub fn random_real_complete(n: usize, seed: u64) -> Result<SignedWeightedGraph> {
    check_range("n", n, 2)?;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let a = loop {
                let a: f64 = rng.random_range(-1.0..1.0);
                if a != 0.0 {
                    break a;
                }
            };
            edges.push((i, j, a));
        }
    }
    SignedWeightedGraph::new(n, edges)
}

/// Each pair becomes an edge with probability `density`, weight a nonzero
/// integer in `[-max_abs, max_abs]`.
pub fn random_integer_graph(
    n: usize,
    density: f64,
    max_abs: i64,
    seed: u64,
) -> Result<SignedWeightedGraph> {
    check_range("n", n, 1)?;
    if max_abs < 1 || !(0.0..=1.0).contains(&density) {
        return Err(Error::input("need max_abs >= 1 and density in [0, 1]"));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.random_bool(density) {
                let mut a = rng.random_range(1..=max_abs);
                if rng.next_u64() & 1 == 1 {
                    a = -a;
                }
                edges.push((i, j, a as f64));
            }
        }
    }
    SignedWeightedGraph::new(n, edges)
}

/// `K_n` with `a_ij = (-1)^⟨bits(i-1), bits(j-1)⟩`, an explicit
/// low-discrepancy weighting taken from a Sylvester Hadamard matrix.
pub fn hadamard_instance(n: usize) -> Result<SignedWeightedGraph> {
    check_range("n", n, 2)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let parity = ((i - 1) & (j - 1)).count_ones() & 1;
            edges.push((i, j, if parity == 0 { 1.0 } else { -1.0 }));
        }
    }
    SignedWeightedGraph::new(n, edges)
}

/// `K_{m,m}` on parts `1..=m` and `m+1..=2m` with uniform `±1` weights.
pub fn random_pm1_bipartite(n_per_side: usize, seed: u64) -> Result<SignedWeightedGraph> {
    if n_per_side == 0 || 2 * n_per_side > MAX_VERTICES {
        return Err(Error::input(format!(
            "part size must be in 1..={}, got {n_per_side}",
            MAX_VERTICES / 2
        )));
    }
    let m = n_per_side;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in m + 1..=2 * m {
            edges.push((i, j, sign_from_draw(rng.next_u64())));
        }
    }
    SignedWeightedGraph::new(2 * m, edges)
}

/// The cycle `1 - 2 - ... - n - 1`; `signs[i-1]` is the weight of `{i, i+1}`
/// and `signs[n-1]` the weight of `{n, 1}`.
pub fn signed_cycle(n: usize, signs: &[f64]) -> Result<SignedWeightedGraph> {
    check_range("cycle length", n, 3)?;
    if signs.len() != n {
        return Err(Error::input(format!(
            "cycle on {n} vertices needs {n} signs, got {}",
            signs.len()
        )));
    }
    SignedWeightedGraph::new(n, (1..=n).map(|i| (i, i % n + 1, signs[i - 1])))
}

/// The path `1 - 2 - ... - n`; `signs[i-1]` is the weight of `{i, i+1}`.
pub fn signed_path(n: usize, signs: &[f64]) -> Result<SignedWeightedGraph> {
    check_range("path length", n, 1)?;
    if signs.len() != n - 1 {
        return Err(Error::input(format!(
            "path on {n} vertices needs {} signs, got {}",
            n - 1,
            signs.len()
        )));
    }
    SignedWeightedGraph::new(n, (1..n).map(|i| (i, i + 1, signs[i - 1])))
}

/// A random labelled tree: vertex `v > 1` attaches to a uniform earlier
/// vertex, with a random sign.
pub fn random_tree(n: usize, seed: u64) -> Result<SignedWeightedGraph> {
    check_range("n", n, 1)?;
    let mut rng = seeded_rng(seed);
    let edges: Vec<_> = (2..=n)
        .map(|v| {
            let parent = rng.random_range(1..v);
            (parent, v, sign_from_draw(rng.next_u64()))
        })
        .collect();
    SignedWeightedGraph::new(n, edges)
}

/// Signs of pattern number `code` over `len` edges: bit `k` set means edge
/// `k` is negative.
pub fn sign_pattern(code: u64, len: usize) -> Vec<f64> {
    (0..len).map(|k| sign_from_draw(code >> k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceFamily {
    RandomPm1Complete,
    Hadamard,
    RandomPm1Bipartite,
    Cycle,
    Path,
    CustomFile,
}

/// Serializable recipe for an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: InstanceFamily,
    /// Vertex count; the part size for `random_pm1_bipartite`.
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<f64>>,
    /// Source file for `custom_file`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<SignedWeightedGraph> {
        let seed = || {
            self.seed
                .ok_or_else(|| Error::input(format!("{:?} needs a seed", self.family)))
        };
        let signs = || {
            self.signs
                .as_deref()
                .ok_or_else(|| Error::input(format!("{:?} needs signs", self.family)))
        };
        match self.family {
            InstanceFamily::RandomPm1Complete => random_pm1_complete(self.n, seed()?),
            InstanceFamily::Hadamard => hadamard_instance(self.n),
            InstanceFamily::RandomPm1Bipartite => random_pm1_bipartite(self.n, seed()?),
            InstanceFamily::Cycle => signed_cycle(self.n, signs()?),
            InstanceFamily::Path => signed_path(self.n, signs()?),
            InstanceFamily::CustomFile => {
                let path = self
                    .path
                    .as_ref()
                    .ok_or_else(|| Error::input("custom_file needs a path"))?;
                let g = read_instance(path)?;
                if g.n() != self.n {
                    return Err(Error::input(format!(
                        "{} has {} vertices, expected {}",
                        path.display(),
                        g.n(),
                        self.n
                    )));
                }
                Ok(g)
            }
        }
    }
}
