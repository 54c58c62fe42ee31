// A dual certificate for the hull envelopes at a half-point: checkable
// without enumerating convex combinations of cube vertices.

use bilingap::{cut_range, dual_certificate, EnvelopeSide, SignedWeightedGraph, VertexSubset};

pub fn run_example() -> bilingap::Result<()> {
    let g = SignedWeightedGraph::new(
        5,
        [(1, 2, 3.0), (2, 3, -2.0), (3, 4, 1.0), (4, 5, 4.0), (1, 5, -1.0), (2, 4, 2.0)],
    )?;
    let t_f = VertexSubset::from_vertices([1, 2, 3, 4])?;
    let range = cut_range(&g, t_f)?;

    let lower = dual_certificate(&g, t_f, range.mu_plus(), EnvelopeSide::LowerEnvelope)?;
    let upper = dual_certificate(&g, t_f, range.mu_minus(), EnvelopeSide::UpperEnvelope)?;
    println!("T_f = {t_f:?}");
    println!("lower: y = {}, z = {:?}, objective {}", lower.y, lower.z, lower.objective());
    println!("upper: y = {}, z = {:?}, objective {}", upper.y, upper.z, upper.objective());

    // a wrong cut value is caught with a violating subset
    match dual_certificate(&g, t_f, range.mu_plus() - 1.0, EnvelopeSide::LowerEnvelope) {
        Err(e) => println!("understated mu+: {e}"),
        Ok(_) => unreachable!("an understated mu+ cannot certify"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("dual_certificate example failed");
}
