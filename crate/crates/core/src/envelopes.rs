//! McCormick and convex-hull envelopes of `b(x) = Σ a_ij x_i x_j` on `[0,1]^n`.
//!
//! * `mcu`/`mcl` maximize/minimize `Σ a_ij y_ij` over the McCormick polytope.
//!   Each `y_ij` sits in its own constraint block, so the optimum is taken
//!   edge by edge in closed form.
//! * `cav`/`vex` maximize/minimize `Σ λ_k b(x^k)` over convex combinations of
//!   hypercube vertices `x^k` averaging to `x`, solved exactly by a dense
//!   simplex. At points of `{0, ½, 1}^n` both gaps also have closed forms in
//!   terms of the extreme cuts of the subgraph on the fractional coordinates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::cuts::{cut_range, BRUTE_FORCE_MAX};
use crate::error::{Error, Result};
use crate::graph::{SignedWeightedGraph, VertexSubset, MAX_VERTICES};
use crate::simplex::DenseLp;

/// Maximum number of fractional coordinates handled by the hull LP
/// (`2^16` columns).
pub const LP_MAX_FRACTIONAL: usize = 16;

/// A point of `[0,1]^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EvaluationPoint {
    coords: Vec<f64>,
}

impl EvaluationPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_VERTICES {
            return Err(Error::input(format!(
                "point dimension must be in 1..={MAX_VERTICES}, got {}",
                coords.len()
            )));
        }
        if let Some((k, v)) = coords
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::input(format!("coordinate {} is {v}, not in [0, 1]", k + 1)));
        }
        Ok(EvaluationPoint { coords })
    }

    /// `(½, …, ½)`.
    pub fn all_half(n: usize) -> Result<Self> {
        Self::new(vec![0.5; n])
    }

    /// The half-point with `x_i = ½` on `fractional`, `1` on `ones`, `0`
    /// elsewhere.
    pub fn half_point(n: usize, fractional: VertexSubset, ones: VertexSubset) -> Result<Self> {
        if !fractional.is_disjoint(ones) {
            return Err(Error::input("fractional and unit coordinates overlap"));
        }
        let coords = (1..=n)
            .map(|v| {
                if fractional.contains(v) {
                    0.5
                } else if ones.contains(v) {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let p = Self::new(coords)?;
        if !fractional.union(ones).is_subset_of(VertexSubset::full(n)) {
            return Err(Error::input("half-point support exceeds the dimension"));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn select(&self, keep: impl Fn(f64) -> bool) -> VertexSubset {
        VertexSubset::from_vertices(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, v)| keep(**v))
                .map(|(k, _)| k + 1),
        )
        .expect("dimension is capped")
    }

    /// `T_0 = {i : x_i = 0}`.
    pub fn zeros(&self) -> VertexSubset {
        self.select(|v| v == 0.0)
    }

    /// `T_f = {i : 0 < x_i < 1}`.
    pub fn fractional(&self) -> VertexSubset {
        self.select(|v| v > 0.0 && v < 1.0)
    }

    /// `T_1 = {i : x_i = 1}`.
    pub fn ones(&self) -> VertexSubset {
        self.select(|v| v == 1.0)
    }

    /// Whether every coordinate is exactly `0`, `½` or `1`.
    pub fn is_half_point(&self) -> bool {
        self.coords.iter().all(|&v| v == 0.0 || v == 0.5 || v == 1.0)
    }
}

fn check_dim(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<()> {
    if g.n() != x.dim() {
        return Err(Error::input(format!(
            "point has dimension {}, graph has {} vertices",
            x.dim(),
            g.n()
        )));
    }
    Ok(())
}

fn require_half_point(x: &EvaluationPoint) -> Result<()> {
    if x.is_half_point() {
        Ok(())
    } else {
        Err(Error::input(
            "closed forms need a point of {0, 1/2, 1}^n; use the LP envelopes elsewhere",
        ))
    }
}

/// An upper and a lower envelope value at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelopes {
    pub upper: f64,
    pub lower: f64,
}

impl Envelopes {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `b(x) = Σ a_ij x_i x_j`.
pub fn evaluate_bilinear(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<f64> {
    check_dim(g, x)?;
    let c = x.coords();
    Ok(g.edges().iter().map(|e| e.weight * c[e.i - 1] * c[e.j - 1]).sum())
}

/// `(mcu, mcl)` edge by edge: `y_ij` ranges over
/// `[max(0, x_i + x_j − 1), min(x_i, x_j)]`.
pub fn mccormick_envelopes(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<Envelopes> {
    check_dim(g, x)?;
    let c = x.coords();
    let (mut upper, mut lower) = (0.0, 0.0);
    for e in g.edges() {
        let (xi, xj) = (c[e.i - 1], c[e.j - 1]);
        let hi = xi.min(xj);
        let lo = (xi + xj - 1.0).max(0.0);
        if e.weight > 0.0 {
            upper += e.weight * hi;
            lower += e.weight * lo;
        } else {
            upper += e.weight * lo;
            lower += e.weight * hi;
        }
    }
    Ok(Envelopes { upper, lower })
}

/// `mcgap(x) = ½ Σ_{ij ∈ γ(T_f)} |a_ij|` at a half-point.
pub fn mcgap_halfpoint(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<f64> {
    check_dim(g, x)?;
    require_half_point(x)?;
    Ok(0.5 * g.gamma_abs_weight(x.fractional())?)
}

/// `(cav, vex)` at any point by linear programming over the hypercube
/// vertices compatible with the integral coordinates of `x`.
pub fn hull_envelopes_lp(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<Envelopes> {
    check_dim(g, x)?;
    let free = x.fractional().to_vec();
    let m = free.len();
    if m > LP_MAX_FRACTIONAL {
        return Err(Error::Capacity {
            what: "fractional coordinates for the hull LP",
            got: m,
            limit: LP_MAX_FRACTIONAL,
        });
    }
    let ones = x.ones();
    let base = g.gamma_weight(ones)?;
    if m == 0 {
        return Ok(Envelopes {
            upper: base,
            lower: base,
        });
    }

    // b at vertex T_1 ∪ {free[p] : bit p of k}
    let linear: Vec<f64> = free
        .iter()
        .map(|&v| ones.iter().map(|u| g.weight(u, v)).sum())
        .collect();
    let cols = 1usize << m;
    let mut cost = vec![0.0; cols];
    for k in 1..cols {
        let p = k.trailing_zeros() as usize;
        let rest = k & (k - 1);
        let mut value = cost[rest] + linear[p];
        let mut bits = rest;
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            value += g.weight(free[p], free[q]);
            bits &= bits - 1;
        }
        cost[k] = value;
    }
    let cost: Vec<f64> = cost.into_iter().map(|v| v + base).collect();

    // rows: convexity, then one row per fractional coordinate
    let rows = m + 1;
    let mut a = vec![0.0; rows * cols];
    for k in 0..cols {
        a[k] = 1.0;
        for p in 0..m {
            if k >> p & 1 == 1 {
                a[(p + 1) * cols + k] = 1.0;
            }
        }
    }
    let mut b = vec![1.0];
    b.extend(free.iter().map(|&v| x.coords()[v - 1]));

    // Staircase start: with coordinates sorted decreasingly, x is a convex
    // combination of the nested vertices {}, {σ1}, {σ1, σ2}, …, all of free.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&p, &q| b[q + 1].total_cmp(&b[p + 1]).then(p.cmp(&q)));
    let mut basis = Vec::with_capacity(rows);
    let mut mask = 0usize;
    basis.push(mask);
    for &p in &order {
        mask |= 1 << p;
        basis.push(mask);
    }

    let lp = DenseLp::new(rows, cols, a, b, cost);
    let lower = lp.solve_from_basis(&basis)?.objective;
    let upper = -lp.negated().solve_from_basis(&basis)?.objective;
    Ok(Envelopes { upper, lower })
}

/// `(cav, vex)` at a half-point from the extreme cut values of the subgraph
/// induced by `T_f`:
///
/// `vex = a(γ(T_1)) + ½ a(δ(T_1, T_f)) + ½ a(γ(T_f)) − ½ μ⁺(T_f)`, and `cav`
/// the same with `μ⁻`, so `chgap = ½ (μ⁺ − μ⁻)`.
pub fn envelopes_halfpoint(
    g: &SignedWeightedGraph,
    x: &EvaluationPoint,
    mu_plus: f64,
    mu_minus: f64,
) -> Result<Envelopes> {
    check_dim(g, x)?;
    require_half_point(x)?;
    let (tf, t1) = (x.fractional(), x.ones());
    let common = g.gamma_weight(t1)? + 0.5 * g.delta_weight(t1, tf)? + 0.5 * g.gamma_weight(tf)?;
    Ok(Envelopes {
        upper: common - 0.5 * mu_minus,
        lower: common - 0.5 * mu_plus,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeSide {
    /// Certifies `vex`: `y + Σ_{i∈X} z_i ≤ a(γ(X))` for all `X ⊆ T_f`.
    LowerEnvelope,
    /// Certifies `cav`: `y + Σ_{i∈X} z_i ≥ a(γ(X))` for all `X ⊆ T_f`.
    UpperEnvelope,
}

/// Dual solution `(y, z)` certifying the optimal value of the `λ`-LP
/// restricted to `T_f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub y: f64,
    pub z: BTreeMap<usize, f64>,
    pub side: EnvelopeSide,
}

impl DualCertificate {
    /// `y + ½ Σ z_i`.
    pub fn objective(&self) -> f64 {
        self.y + 0.5 * self.z.values().sum::<f64>()
    }

    /// Checks the side's inequality on every `X ⊆ T_f`, where `T_f` is the
    /// key set of `z`. Returns the first violating subset.
    pub fn validate(&self, g: &SignedWeightedGraph) -> Result<()> {
        let members: Vec<usize> = self.z.keys().copied().collect();
        let m = members.len();
        if m > BRUTE_FORCE_MAX {
            return Err(Error::Capacity {
                what: "certificate support",
                got: m,
                limit: BRUTE_FORCE_MAX,
            });
        }
        let zs: Vec<f64> = self.z.values().copied().collect();
        let scale = 1.0 + g.total_abs_weight() + self.y.abs();
        let tol = 1e-9 * scale;
        let count = 1usize << m;
        let mut lhs = vec![self.y; count];
        let mut gamma = vec![0.0; count];
        for k in 0..count {
            if k > 0 {
                let p = k.trailing_zeros() as usize;
                let rest = k & (k - 1);
                lhs[k] = lhs[rest] + zs[p];
                let mut value = gamma[rest];
                let mut bits = rest;
                while bits != 0 {
                    let q = bits.trailing_zeros() as usize;
                    value += g.weight(members[p], members[q]);
                    bits &= bits - 1;
                }
                gamma[k] = value;
            }
            let violated = match self.side {
                EnvelopeSide::LowerEnvelope => lhs[k] > gamma[k] + tol,
                EnvelopeSide::UpperEnvelope => lhs[k] < gamma[k] - tol,
            };
            if violated {
                let violating = VertexSubset::from_vertices(
                    (0..m).filter(|p| k >> p & 1 == 1).map(|p| members[p]),
                )?;
                return Err(Error::Certificate {
                    violating,
                    lhs: lhs[k],
                    rhs: gamma[k],
                });
            }
        }
        Ok(())
    }
}

/// Builds `y = −μ/2`, `z_i = ½ Σ_{j∈T_f, ij∈E} a_ij` and verifies it.
///
/// `mu` must be `μ⁺(T_f)` for the lower side or `μ⁻(T_f)` for the upper side;
/// a wrong value is reported as [`Error::Certificate`] with a violating set.
/// On success the objective equals `½ (a(γ(T_f)) − μ)`.
pub fn dual_certificate(
    g: &SignedWeightedGraph,
    t_f: VertexSubset,
    mu: f64,
    side: EnvelopeSide,
) -> Result<DualCertificate> {
    g.check_subset(t_f)?;
    let z = t_f
        .iter()
        .map(|i| {
            let s: f64 = t_f.iter().map(|j| g.weight(i, j)).sum();
            (i, 0.5 * s)
        })
        .collect();
    let cert = DualCertificate { y: -mu / 2.0, z, side };
    cert.validate(g)?;
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapMethod {
    ClosedForm,
    Lp,
}

/// `mcgap / chgap`, or infinity when only the hull gap vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Finite(f64),
    Infinite,
}

impl Ratio {
    pub fn value(self) -> f64 {
        match self {
            Ratio::Finite(v) => v,
            Ratio::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(v) => write!(f, "{v}"),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ratio::Finite(v) => serializer.serialize_f64(*v),
            Ratio::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub point: EvaluationPoint,
    pub mcu: f64,
    pub mcl: f64,
    pub cav: f64,
    pub vex: f64,
    pub mcgap: f64,
    pub chgap: f64,
    pub ratio: Ratio,
    pub method: GapMethod,
    /// Both gaps vanish; `ratio` is then reported as 1.
    pub degenerate: bool,
}

/// Both envelope pairs, both gaps and their ratio at `x`.
///
/// Half-points use the cut closed forms (`|T_f| ≤ 26`); other points solve
/// the hull LP (`|T_f| ≤ 16`).
pub fn gap_report(g: &SignedWeightedGraph, x: &EvaluationPoint) -> Result<GapReport> {
    check_dim(g, x)?;
    let mc = mccormick_envelopes(g, x)?;
    let (hull, method) = if x.is_half_point() {
        let range = cut_range(g, x.fractional())?;
        (
            envelopes_halfpoint(g, x, range.mu_plus(), range.mu_minus())?,
            GapMethod::ClosedForm,
        )
    } else {
        (hull_envelopes_lp(g, x)?, GapMethod::Lp)
    };
    let (mcgap, chgap) = (mc.gap(), hull.gap());
    let (ratio, degenerate) = gap_ratio(mcgap, chgap, g.total_abs_weight());
    Ok(GapReport {
        point: x.clone(),
        mcu: mc.upper,
        mcl: mc.lower,
        cav: hull.upper,
        vex: hull.lower,
        mcgap,
        chgap,
        ratio,
        method,
        degenerate,
    })
}

/// Ratio with the conventions `0/0 → 1` (degenerate) and `m/0 → ∞`; gaps
/// below `1e-9 · max(1, scale)` count as zero.
pub fn gap_ratio(mcgap: f64, chgap: f64, scale: f64) -> (Ratio, bool) {
    let zero = 1e-9 * scale.max(1.0);
    match (mcgap <= zero, chgap <= zero) {
        (true, true) => (Ratio::Finite(1.0), true),
        (false, true) => (Ratio::Infinite, false),
        _ => (Ratio::Finite(mcgap / chgap), false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::hadamard_instance;

    fn g(n: usize, edges: &[(usize, usize, f64)]) -> SignedWeightedGraph {
        SignedWeightedGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn triangle() -> SignedWeightedGraph {
        g(3, &[(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
    }

    fn pt(c: &[f64]) -> EvaluationPoint {
        EvaluationPoint::new(c.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn point_partition() {
        let p = pt(&[0.0, 0.5, 1.0, 0.25]);
        assert_eq!(p.zeros().to_vec(), vec![1]);
        assert_eq!(p.fractional().to_vec(), vec![2, 4]);
        assert_eq!(p.ones().to_vec(), vec![3]);
        assert!(!p.is_half_point());
        assert!(pt(&[0.0, 0.5, 1.0]).is_half_point());
        assert!(EvaluationPoint::new(vec![1.5]).is_err());
        assert!(EvaluationPoint::new(vec![f64::NAN]).is_err());
        assert!(EvaluationPoint::new(vec![]).is_err());
    }

    #[test]
    fn bilinear_values() {
        assert_eq!(evaluate_bilinear(&g(2, &[(1, 2, 1.0)]), &pt(&[0.5, 0.5])).unwrap(), 0.25);
        assert_eq!(evaluate_bilinear(&triangle(), &pt(&[0.5; 3])).unwrap(), 0.75);
        let mixed = g(3, &[(1, 2, 5.0), (1, 3, -2.0)]);
        assert_eq!(evaluate_bilinear(&mixed, &pt(&[1.0, 1.0, 0.5])).unwrap(), 4.0);
        assert!(evaluate_bilinear(&mixed, &pt(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn mccormick_values() {
        let e = mccormick_envelopes(&g(2, &[(1, 2, 1.0)]), &pt(&[0.3, 0.8])).unwrap();
        assert!(close(e.upper, 0.3) && close(e.lower, 0.1));
        let e = mccormick_envelopes(&triangle(), &pt(&[0.5; 3])).unwrap();
        assert_eq!((e.upper, e.lower), (1.5, 0.0));
        let t = triangle();
        let v = pt(&[1.0, 0.0, 1.0]);
        let e = mccormick_envelopes(&t, &v).unwrap();
        let b = evaluate_bilinear(&t, &v).unwrap();
        assert_eq!((e.upper, e.lower), (b, b));
    }

    #[test]
    fn mcgap_closed_form_values() {
        assert_eq!(mcgap_halfpoint(&triangle(), &pt(&[0.5; 3])).unwrap(), 1.5);
        assert_eq!(mcgap_halfpoint(&triangle(), &pt(&[1.0, 0.0, 1.0])).unwrap(), 0.0);
        let k = crate::instances::random_pm1_complete(10, 3).unwrap();
        assert_eq!(mcgap_halfpoint(&k, &EvaluationPoint::all_half(10).unwrap()).unwrap(), 22.5);
        assert!(matches!(
            mcgap_halfpoint(&triangle(), &pt(&[0.5, 0.3, 1.0])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn hull_lp_values() {
        let e = hull_envelopes_lp(&g(2, &[(1, 2, 1.0)]), &pt(&[0.3, 0.8])).unwrap();
        assert!(close(e.upper, 0.3) && close(e.lower, 0.1));
        let e = hull_envelopes_lp(&triangle(), &pt(&[0.5; 3])).unwrap();
        assert!(close(e.upper, 1.5) && close(e.lower, 0.5));
        let e = hull_envelopes_lp(&triangle(), &pt(&[0.0, 1.0, 1.0])).unwrap();
        assert_eq!((e.upper, e.lower), (1.0, 1.0));
    }

    #[test]
    fn hull_lp_capacity() {
        let big = SignedWeightedGraph::new(17, [(1, 2, 1.0)]).unwrap();
        assert!(matches!(
            hull_envelopes_lp(&big, &EvaluationPoint::all_half(17).unwrap()),
            Err(Error::Capacity { got: 17, .. })
        ));
        // integral coordinates do not count toward the cap
        let mut c = vec![0.5; 16];
        c.push(1.0);
        assert!(hull_envelopes_lp(&big, &pt(&c)).is_ok());
    }

    #[test]
    fn halfpoint_closed_form_values() {
        let e = envelopes_halfpoint(&triangle(), &pt(&[0.5; 3]), 2.0, 0.0).unwrap();
        assert_eq!((e.upper, e.lower, e.gap()), (1.5, 0.5, 1.0));
        let h = hadamard_instance(4).unwrap();
        let e = envelopes_halfpoint(&h, &pt(&[0.5; 4]), 3.0, -1.0).unwrap();
        assert_eq!(e.gap(), 2.0);
        let v = pt(&[1.0, 0.0, 1.0]);
        let e = envelopes_halfpoint(&triangle(), &v, 0.0, 0.0).unwrap();
        assert_eq!((e.upper, e.lower), (1.0, 1.0));
    }

    #[test]
    fn certificate_examples() {
        let t = triangle();
        let c = dual_certificate(&t, t.vertices(), 2.0, EnvelopeSide::LowerEnvelope).unwrap();
        assert_eq!(c.y, -1.0);
        assert_eq!(c.z.values().copied().collect::<Vec<_>>(), vec![1.0, 1.0, 1.0]);
        assert_eq!(c.objective(), 0.5);

        let c = dual_certificate(&t, VertexSubset::EMPTY, 0.0, EnvelopeSide::LowerEnvelope).unwrap();
        assert_eq!((c.y, c.z.len(), c.objective()), (0.0, 0, 0.0));

        let e = g(2, &[(1, 2, -3.0)]);
        let c = dual_certificate(&e, e.vertices(), -3.0, EnvelopeSide::UpperEnvelope).unwrap();
        assert_eq!(c.y, 1.5);
        assert_eq!(c.z.values().copied().collect::<Vec<_>>(), vec![-1.5, -1.5]);
        assert_eq!(c.objective(), 0.0);
    }

    #[test]
    fn wrong_mu_yields_violating_subset() {
        let t = triangle();
        match dual_certificate(&t, t.vertices(), 1.0, EnvelopeSide::LowerEnvelope) {
            Err(Error::Certificate { violating, lhs, rhs }) => {
                assert!(lhs > rhs);
                // a maximum cut side (or its complement) is where feasibility breaks
                assert!(violating.len() == 1 || violating.len() == 2);
            }
            other => panic!("expected certificate error, got {other:?}"),
        }
    }

    #[test]
    fn report_examples() {
        let r = gap_report(&triangle(), &pt(&[0.5; 3])).unwrap();
        assert_eq!((r.mcgap, r.chgap), (1.5, 1.0));
        assert_eq!(r.ratio, Ratio::Finite(1.5));
        assert_eq!(r.method, GapMethod::ClosedForm);

        let h = hadamard_instance(4).unwrap();
        let r = gap_report(&h, &pt(&[0.5; 4])).unwrap();
        assert_eq!((r.mcgap, r.chgap, r.ratio), (3.0, 2.0, Ratio::Finite(1.5)));

        let edge = g(2, &[(1, 2, 2.0)]);
        let r = gap_report(&edge, &pt(&[0.3, 0.6])).unwrap();
        assert_eq!(r.method, GapMethod::Lp);
        assert!(close(r.ratio.value(), 1.0));
        let r = gap_report(&edge, &pt(&[1.0, 0.0])).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.ratio, Ratio::Finite(1.0));
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(gap_ratio(0.0, 0.0, 1.0), (Ratio::Finite(1.0), true));
        assert_eq!(gap_ratio(1.0, 0.0, 1.0), (Ratio::Infinite, false));
        assert_eq!(gap_ratio(3.0, 2.0, 1.0), (Ratio::Finite(1.5), false));
        assert_eq!(serde_json::to_string(&Ratio::Infinite).unwrap(), "\"inf\"");
    }

    #[test]
    fn report_json_fields() {
        let r = gap_report(&triangle(), &pt(&[0.5; 3])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["point", "mcu", "mcl", "cav", "vex", "mcgap", "chgap", "ratio", "method", "degenerate"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["method"], "closed_form");
        assert_eq!(v["point"], serde_json::json!([0.5, 0.5, 0.5]));
    }
}
