// Exact maximum and minimum signed cuts by enumeration, and the
// randomized large-cut finder with its guarantee.

use bilingap::cuts::guarantee_bound;
use bilingap::instances::random_pm1_complete;
use bilingap::{cut_range, find_large_cut, VertexSubset};

pub fn run_example() -> bilingap::Result<()> {
    let g = random_pm1_complete(14, 7)?;
    let range = cut_range(&g, g.vertices())?;
    println!(
        "K14, random signs: mu+ = {} (side {:?}), mu- = {} (side {:?})",
        range.mu_plus(),
        range.max.side,
        range.mu_minus(),
        range.min.side
    );

    // restricted to an induced subgraph
    let x = VertexSubset::from_vertices([1, 2, 3, 4, 5, 6])?;
    let sub = cut_range(&g, x)?;
    println!("on {x:?}: mu+ = {}, mu- = {}", sub.mu_plus(), sub.mu_minus());

    let big = random_pm1_complete(40, 3)?;
    let res = find_large_cut(&big, 0, 1000)?;
    println!(
        "K40: |cut| = {} >= bound {:.4}? {} (case {}, {} trials, c ~ {:.1})",
        res.cut.weight.abs(),
        guarantee_bound(&big),
        res.meets_guarantee,
        res.case_taken.as_str(),
        res.trials_used,
        res.empirical_constant()
    );
    assert!(res.meets_guarantee);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("extreme_cuts example failed");
}
