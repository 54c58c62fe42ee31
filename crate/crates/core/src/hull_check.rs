//! Exactness of the McCormick relaxation.
//!
//! The relaxation equals the convex hull iff every cycle has an even number
//! of positive edges and an even number of negative edges. Each parity
//! condition is a 2-colouring problem: for the negative edges, colour so that
//! positive edges join equal labels and negative edges join different
//! labels; symmetrically for the positive edges. A colouring conflict closes
//! a cycle with the offending parity.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::cuts::cut_range;
use crate::error::Result;
use crate::graph::{SignedWeightedGraph, VertexSubset};

/// A simple cycle given by its vertex sequence, with its sign counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCycle {
    pub vertices: Vec<usize>,
    pub positive_edges: usize,
    pub negative_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullExactness {
    pub exact: bool,
    /// Positive edges monochromatic, negative edges bichromatic.
    pub positive_coloring: Option<BTreeMap<usize, u8>>,
    /// Negative edges monochromatic, positive edges bichromatic.
    pub negative_coloring: Option<BTreeMap<usize, u8>>,
    pub violating_cycle: Option<SignedCycle>,
}

/// Decides exactness in `O(n + |E|)` and returns either both colourings or a
/// cycle with an odd number of positive or negative edges.
pub fn check_hull_exact(g: &SignedWeightedGraph) -> HullExactness {
    let positive = two_color(g, |a| a > 0.0);
    let negative = two_color(g, |a| a < 0.0);
    match (positive, negative) {
        (Ok(p), Ok(q)) => HullExactness {
            exact: true,
            positive_coloring: Some(p),
            negative_coloring: Some(q),
            violating_cycle: None,
        },
        (Err(cycle), _) | (_, Err(cycle)) => HullExactness {
            exact: false,
            positive_coloring: None,
            negative_coloring: None,
            violating_cycle: Some(cycle),
        },
    }
}

/// Breadth-first labelling where edges selected by `same` demand equal
/// labels and all others demand different labels. Roots are taken in
/// ascending order, neighbours visited ascending, isolated vertices get 0.
fn two_color(
    g: &SignedWeightedGraph,
    same: impl Fn(f64) -> bool,
) -> std::result::Result<BTreeMap<usize, u8>, SignedCycle> {
    let n = g.n();
    let mut label: Vec<Option<u8>> = vec![None; n + 1];
    let mut parent = vec![0usize; n + 1];
    let mut depth = vec![0usize; n + 1];
    for root in 1..=n {
        if label[root].is_some() {
            continue;
        }
        label[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let lu = label[u].expect("queued vertices are labelled");
            for (v, a) in g.neighbors(u) {
                let want = if same(a) { lu } else { 1 - lu };
                match label[v] {
                    None => {
                        label[v] = Some(want);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(lv) if lv != want => {
                        return Err(close_cycle(g, &parent, &depth, u, v));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok((1..=n).map(|v| (v, label[v].unwrap_or(0))).collect())
}

/// Tree paths from `u` and `v` up to their lowest common ancestor, closed
/// by the edge `{u, v}`.
fn close_cycle(
    g: &SignedWeightedGraph,
    parent: &[usize],
    depth: &[usize],
    u: usize,
    v: usize,
) -> SignedCycle {
    let (mut a, mut b) = (u, v);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_b.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_a.push(a);
        up_b.push(b);
    }
    // up_a ends at the ancestor; walk down the other branch excluding it
    up_b.pop();
    up_b.reverse();
    let mut vertices = up_a;
    vertices.extend(up_b);
    let k = vertices.len();
    let (mut positive_edges, mut negative_edges) = (0, 0);
    for idx in 0..k {
        let w = g.weight(vertices[idx], vertices[(idx + 1) % k]);
        debug_assert!(w != 0.0, "cycle uses a non-edge");
        if w > 0.0 {
            positive_edges += 1;
        } else {
            negative_edges += 1;
        }
    }
    SignedCycle {
        vertices,
        positive_edges,
        negative_edges,
    }
}

/// Whether `μ⁺(X) − μ⁻(X) = Σ_{γ(X)} |a_ij|` (within `1e-9`), using the
/// enumeration oracles.
pub fn verify_exactness_numerically(g: &SignedWeightedGraph, x: VertexSubset) -> Result<bool> {
    let range = cut_range(g, x)?;
    let abs = g.gamma_abs_weight(x)?;
    Ok((range.spread() - abs).abs() <= 1e-9 * abs.max(1.0))
}

impl HullExactness {
    /// Re-checks the colourings edge by edge, or the cycle's closure and
    /// parity.
    pub fn is_consistent_with(&self, g: &SignedWeightedGraph) -> bool {
        if self.exact {
            let (Some(p), Some(q)) = (&self.positive_coloring, &self.negative_coloring) else {
                return false;
            };
            g.edges().iter().all(|e| {
                let p_same = p[&e.i] == p[&e.j];
                let q_same = q[&e.i] == q[&e.j];
                if e.weight > 0.0 {
                    p_same && !q_same
                } else {
                    !p_same && q_same
                }
            })
        } else {
            let Some(c) = &self.violating_cycle else {
                return false;
            };
            let k = c.vertices.len();
            let mut seen = VertexSubset::EMPTY;
            for &v in &c.vertices {
                if seen.contains(v) {
                    return false;
                }
                seen.insert(v);
            }
            k >= 3
                && (0..k).all(|i| g.weight(c.vertices[i], c.vertices[(i + 1) % k]) != 0.0)
                && c.positive_edges + c.negative_edges == k
                && (c.positive_edges % 2 == 1 || c.negative_edges % 2 == 1)
        }
    }
}
