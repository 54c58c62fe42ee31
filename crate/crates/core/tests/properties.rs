use proptest::prelude::*;

use bilingap::instances::random_pm1_bipartite;
use bilingap::{
    cut_range, evaluate_bilinear, gap_report, hull_envelopes_lp, mccormick_envelopes,
    EvaluationPoint, SignedWeightedGraph, VertexSubset,
};

fn graph(max_n: usize) -> impl Strategy<Value = SignedWeightedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![Just(0i32), -5i32..=5], pairs).prop_map(move |w| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    if w[k] != 0 {
                        edges.push((i, j, w[k] as f64));
                    }
                    k += 1;
                }
            }
            SignedWeightedGraph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_point(max_n: usize) -> impl Strategy<Value = (SignedWeightedGraph, Vec<f64>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        let coord = prop_oneof![Just(0.0), Just(1.0), Just(0.5), 0.0..=1.0f64];
        (Just(g), proptest::collection::vec(coord, n))
    })
}

/// Every `U ⊆ X` by plain subset enumeration.
fn naive_cut_range(g: &SignedWeightedGraph, x: VertexSubset) -> (f64, f64) {
    let members = x.to_vec();
    let (mut hi, mut lo) = (0.0f64, 0.0f64);
    for k in 0..1u64 << members.len() {
        let mut w = 0.0;
        for (p, &i) in members.iter().enumerate() {
            for (q, &j) in members.iter().enumerate() {
                if k >> p & 1 == 1 && k >> q & 1 == 0 {
                    w += g.weight(i, j);
                }
            }
        }
        hi = hi.max(w);
        lo = lo.min(w);
    }
    (hi, lo)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cut_weight_is_symmetric_and_decomposes(g in graph(10), bits in any::<u64>()) {
        let v = g.vertices();
        let u = VertexSubset::from_bits(bits & v.bits());
        let w = g.cut_weight(v, u).unwrap();
        prop_assert_eq!(w, g.cut_weight(v, v.difference(u)).unwrap());
        // a(δ(U)) = a(γ(V)) − a(γ(U)) − a(γ(V∖U))
        let parts = g.gamma_weight(v).unwrap()
            - g.gamma_weight(u).unwrap()
            - g.gamma_weight(v.difference(u)).unwrap();
        prop_assert!((w - parts).abs() < 1e-9);
        prop_assert!(w.abs() <= g.total_abs_weight());
    }

    #[test]
    fn extreme_cuts_match_naive_enumeration(g in graph(9), bits in any::<u64>()) {
        let x = VertexSubset::from_bits(bits & g.vertices().bits());
        let r = cut_range(&g, x).unwrap();
        let (hi, lo) = naive_cut_range(&g, x);
        prop_assert_eq!(r.mu_plus(), hi);
        prop_assert_eq!(r.mu_minus(), lo);
        prop_assert!(r.max.is_consistent(&g) && r.min.is_consistent(&g));
    }

    #[test]
    fn envelopes_are_ordered((g, coords) in graph_and_point(10)) {
        let x = EvaluationPoint::new(coords).unwrap();
        let r = gap_report(&g, &x).unwrap();
        let b = evaluate_bilinear(&g, &x).unwrap();
        let tol = 1e-9 * (1.0 + g.total_abs_weight());
        prop_assert!(r.mcl <= r.vex + tol, "mcl {} vex {}", r.mcl, r.vex);
        prop_assert!(r.vex <= b + tol && b <= r.cav + tol);
        prop_assert!(r.cav <= r.mcu + tol, "cav {} mcu {}", r.cav, r.mcu);
        prop_assert!(r.chgap <= r.mcgap + tol);
    }

    #[test]
    fn mccormick_is_per_edge_interval((g, coords) in graph_and_point(10)) {
        let x = EvaluationPoint::new(coords.clone()).unwrap();
        let mc = mccormick_envelopes(&g, &x).unwrap();
        let (mut hi, mut lo) = (0.0, 0.0);
        for e in g.edges() {
            let (xi, xj) = (coords[e.i - 1], coords[e.j - 1]);
            let top = xi.min(xj);
            let bottom = (xi + xj - 1.0).max(0.0);
            if e.weight > 0.0 {
                hi += e.weight * top;
                lo += e.weight * bottom;
            } else {
                hi += e.weight * bottom;
                lo += e.weight * top;
            }
        }
        prop_assert!((mc.upper - hi).abs() < 1e-9 && (mc.lower - lo).abs() < 1e-9);
    }

    #[test]
    fn gaps_scale_and_flip_with_weights((g, coords) in graph_and_point(7), factor in 0.25..4.0f64) {
        let x = EvaluationPoint::new(coords).unwrap();
        let base = gap_report(&g, &x).unwrap();
        let scaled = gap_report(&g.scaled(factor).unwrap(), &x).unwrap();
        let flipped = gap_report(&g.scaled(-1.0).unwrap(), &x).unwrap();
        let tol = 1e-8 * (1.0 + factor * g.total_abs_weight());
        prop_assert!((scaled.mcgap - factor * base.mcgap).abs() < tol);
        prop_assert!((scaled.chgap - factor * base.chgap).abs() < tol);
        // negating b swaps and negates the envelopes, leaving the gaps alone
        prop_assert!((flipped.mcgap - base.mcgap).abs() < tol);
        prop_assert!((flipped.chgap - base.chgap).abs() < tol);
        prop_assert!((flipped.cav + base.vex).abs() < tol);
    }

    #[test]
    fn lp_agrees_with_cut_formula_at_half_points(g in graph(8), tf in any::<u64>(), t1 in any::<u64>()) {
        let n = g.n();
        let tf = VertexSubset::from_bits(tf & g.vertices().bits());
        let t1 = VertexSubset::from_bits(t1 & g.vertices().bits()).difference(tf);
        let x = EvaluationPoint::half_point(n, tf, t1).unwrap();
        let closed = gap_report(&g, &x).unwrap();
        let lp = hull_envelopes_lp(&g, &x).unwrap();
        prop_assert!((closed.cav - lp.upper).abs() < 1e-9);
        prop_assert!((closed.vex - lp.lower).abs() < 1e-9);
    }
}

#[test]
fn bipartite_ratio_mostly_reaches_sqrt_n_over_8() {
    let n = 20;
    let threshold = (n as f64).sqrt() / 8.0;
    let x = EvaluationPoint::all_half(n).unwrap();
    let hits = (0..50)
        .filter(|&seed| {
            let g = random_pm1_bipartite(10, seed).unwrap();
            gap_report(&g, &x).unwrap().ratio.value() >= threshold
        })
        .count();
    assert!(hits >= 45, "only {hits}/50 reach {threshold}");
}
