//! Signed weighted graphs and the edge-set sums built on them.
//!
//! Vertices are labelled `1..=n`. A [`SignedWeightedGraph`] stores every
//! edge once in canonical orientation `i < j` with a nonzero weight, which
//! is the coefficient of `x_i x_j` in the bilinear function it encodes.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count representable by [`VertexSubset`].
pub const MAX_VERTICES: usize = 63;

/// A set of vertices stored as a bitmask; vertex `v` is bit `v - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSubset(u64);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSubset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All of `1..=n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == 0 {
            VertexSubset(0)
        } else {
            VertexSubset(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSubset(1 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if !(1..=MAX_VERTICES).contains(&v) {
                return Err(Error::input(format!(
                    "vertex {v} outside 1..={MAX_VERTICES}"
                )));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSubset(bits))
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        *self = self.union(Self::singleton(v));
    }

    pub fn remove(&mut self, v: usize) {
        *self = self.difference(Self::singleton(v));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSubset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        VertexSubset::from_vertices(vertices).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Immutable graph with nonzero real edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedWeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    // n * n row-major, zero where there is no edge
    dense: Vec<f64>,
}

impl SignedWeightedGraph {
    /// Builds a graph from `(i, j, a)` triples with 1-based endpoints.
    ///
    /// Endpoints may be given in either order; they are stored as `i < j`.
    /// Self-loops, zero or non-finite weights and repeated pairs are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::input("graph needs at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                got: n,
                limit: MAX_VERTICES,
            });
        }
        let mut dense = vec![0.0; n * n];
        let mut stored = Vec::new();
        for (a, b, weight) in edges {
            let (i, j) = if a <= b { (a, b) } else { (b, a) };
            if i == 0 || j > n {
                return Err(Error::input(format!("edge ({a}, {b}) outside 1..={n}")));
            }
            if i == j {
                return Err(Error::input(format!("self-loop at vertex {i}")));
            }
            if !weight.is_finite() {
                return Err(Error::input(format!("edge ({i}, {j}) has weight {weight}")));
            }
            if weight == 0.0 {
                return Err(Error::input(format!("edge ({i}, {j}) has zero weight")));
            }
            if dense[(i - 1) * n + (j - 1)] != 0.0 {
                return Err(Error::input(format!("duplicate edge ({i}, {j})")));
            }
            dense[(i - 1) * n + (j - 1)] = weight;
            dense[(j - 1) * n + (i - 1)] = weight;
            stored.push(Edge { i, j, weight });
        }
        stored.sort_by_key(|e| (e.i, e.j));
        Ok(SignedWeightedGraph {
            n,
            edges: stored,
            dense,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted lexicographically by `(i, j)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSubset {
        VertexSubset::full(self.n)
    }

    /// Weight of the pair `{i, j}`, zero when absent.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.dense[(i - 1) * self.n + (j - 1)]
    }

    /// Row of the dense weight matrix for vertex `v`, indexed by `u - 1`.
    pub fn row(&self, v: usize) -> &[f64] {
        &self.dense[(v - 1) * self.n..v * self.n]
    }

    /// Neighbours of `v` with edge weights, ascending by vertex.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(u, a)| (u + 1, *a))
    }

    pub fn check_subset(&self, x: VertexSubset) -> Result<()> {
        if x.is_subset_of(self.vertices()) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "subset {x:?} has vertices outside 1..={}",
                self.n
            )))
        }
    }

    /// Sum of `|a_ij|` over all edges.
    pub fn total_abs_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight.abs()).sum()
    }

    /// `a(γ(X))`: total weight of edges with both endpoints in `x`.
    pub fn gamma_weight(&self, x: VertexSubset) -> Result<f64> {
        self.check_subset(x)?;
        Ok(self.sum_edges(|e| x.contains(e.i) && x.contains(e.j), |w| w))
    }

    /// Sum of `|a_ij|` over edges with both endpoints in `x`.
    pub fn gamma_abs_weight(&self, x: VertexSubset) -> Result<f64> {
        self.check_subset(x)?;
        Ok(self.sum_edges(|e| x.contains(e.i) && x.contains(e.j), f64::abs))
    }

    /// `a(δ(A, B))` for disjoint `a` and `b`.
    pub fn delta_weight(&self, a: VertexSubset, b: VertexSubset) -> Result<f64> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        if !a.is_disjoint(b) {
            return Err(Error::input(format!("{a:?} and {b:?} are not disjoint")));
        }
        Ok(self.sum_edges(
            |e| {
                (a.contains(e.i) && b.contains(e.j)) || (b.contains(e.i) && a.contains(e.j))
            },
            |w| w,
        ))
    }

    /// Signed weight of the cut `(U, X \ U)` inside the subgraph induced by `x`.
    pub fn cut_weight(&self, x: VertexSubset, u: VertexSubset) -> Result<f64> {
        self.check_subset(x)?;
        if !u.is_subset_of(x) {
            return Err(Error::input(format!("cut side {u:?} is not inside {x:?}")));
        }
        self.delta_weight(u, x.difference(u))
    }

    fn sum_edges(&self, keep: impl Fn(&Edge) -> bool, f: impl Fn(f64) -> f64) -> f64 {
        self.edges
            .iter()
            .filter(|e| keep(e))
            .map(|e| f(e.weight))
            .sum()
    }

    /// The subgraph induced by `x`, relabelled `1..=|x|` in ascending order.
    ///
    /// Returns the graph together with the original label of each new vertex.
    pub fn induced_subgraph(&self, x: VertexSubset) -> Result<(SignedWeightedGraph, Vec<usize>)> {
        self.check_subset(x)?;
        if x.is_empty() {
            return Err(Error::input("induced subgraph of the empty set"));
        }
        let labels = x.to_vec();
        let mut index = vec![0; self.n + 1];
        for (k, &v) in labels.iter().enumerate() {
            index[v] = k + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| x.contains(e.i) && x.contains(e.j))
            .map(|e| (index[e.i], index[e.j], e.weight));
        Ok((SignedWeightedGraph::new(labels.len(), edges)?, labels))
    }

    /// Same graph with every weight multiplied by `factor` (nonzero).
    pub fn scaled(&self, factor: f64) -> Result<SignedWeightedGraph> {
        SignedWeightedGraph::new(
            self.n,
            self.edges.iter().map(|e| (e.i, e.j, e.weight * factor)),
        )
    }
}

/// A cut `(U, X \ U)` of the subgraph induced by a ground set `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cut {
    pub ground_set: VertexSubset,
    pub side: VertexSubset,
    pub weight: f64,
}

impl Cut {
    pub fn new(g: &SignedWeightedGraph, ground_set: VertexSubset, side: VertexSubset) -> Result<Cut> {
        let weight = g.cut_weight(ground_set, side)?;
        Ok(Cut {
            ground_set,
            side,
            weight,
        })
    }

    /// Recomputes the weight and compares at relative tolerance 1e-12.
    pub fn is_consistent(&self, g: &SignedWeightedGraph) -> bool {
        match g.cut_weight(self.ground_set, self.side) {
            Ok(w) => (w - self.weight).abs() <= 1e-12 * w.abs().max(self.weight.abs()).max(1.0),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SignedWeightedGraph {
        SignedWeightedGraph::new(3, [(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn mixed() -> SignedWeightedGraph {
        SignedWeightedGraph::new(3, [(1, 2, 5.0), (1, 3, -2.0), (2, 3, 1.0)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSubset {
        VertexSubset::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn gamma_weight_examples() {
        assert_eq!(triangle().gamma_weight(set(&[1, 2, 3])).unwrap(), 3.0);
        assert_eq!(triangle().gamma_weight(set(&[1])).unwrap(), 0.0);
        assert_eq!(mixed().gamma_weight(set(&[1, 2])).unwrap(), 5.0);
    }

    #[test]
    fn gamma_abs_weight_examples() {
        assert_eq!(mixed().gamma_abs_weight(set(&[1, 2, 3])).unwrap(), 8.0);
        assert_eq!(mixed().gamma_abs_weight(VertexSubset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn cut_weight_examples() {
        let g = triangle();
        assert_eq!(g.cut_weight(g.vertices(), set(&[1])).unwrap(), 2.0);
        assert_eq!(g.cut_weight(g.vertices(), VertexSubset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range_subsets_are_input_errors() {
        let g = triangle();
        assert!(matches!(g.gamma_weight(set(&[4])), Err(Error::Input(_))));
        assert!(matches!(g.gamma_abs_weight(set(&[1, 5])), Err(Error::Input(_))));
        assert!(matches!(g.cut_weight(set(&[1, 2]), set(&[3])), Err(Error::Input(_))));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(SignedWeightedGraph::new(3, [(1, 2, 0.0)]).is_err());
        assert!(SignedWeightedGraph::new(3, [(1, 1, 1.0)]).is_err());
        assert!(SignedWeightedGraph::new(3, [(1, 4, 1.0)]).is_err());
        assert!(SignedWeightedGraph::new(3, [(1, 2, 1.0), (2, 1, 3.0)]).is_err());
        assert!(SignedWeightedGraph::new(3, [(1, 2, f64::NAN)]).is_err());
        assert!(SignedWeightedGraph::new(0, []).is_err());
        assert!(matches!(
            SignedWeightedGraph::new(64, []),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn edges_are_canonical_and_sorted() {
        let g = SignedWeightedGraph::new(4, [(4, 2, 1.0), (3, 1, -1.0)]).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(1, 3), (2, 4)]);
        assert_eq!(g.weight(4, 2), 1.0);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let (sub, labels) = mixed().induced_subgraph(set(&[1, 3])).unwrap();
        assert_eq!(labels, vec![1, 3]);
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.weight(1, 2), -2.0);
    }

    #[test]
    fn subset_iteration_and_serde() {
        let s = set(&[5, 1, 63]);
        assert_eq!(s.to_vec(), vec![1, 5, 63]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,5,63]");
        let back: VertexSubset = serde_json::from_str("[63,1,5]").unwrap();
        assert_eq!(back, s);
        assert!(VertexSubset::from_vertices([0]).is_err());
        assert_eq!(VertexSubset::full(63).len(), 63);
    }
}
