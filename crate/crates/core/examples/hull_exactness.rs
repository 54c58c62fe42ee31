// When is McCormick already the convex hull? Cycle parities decide it; the
// answer is cross-checked against the cut-based numerical criterion.

use bilingap::instances::{signed_cycle, signed_path};
use bilingap::{check_hull_exact, verify_exactness_numerically, SignedWeightedGraph};

fn show(name: &str, g: &SignedWeightedGraph) -> bilingap::Result<()> {
    let h = check_hull_exact(g);
    let numeric = verify_exactness_numerically(g, g.vertices())?;
    match &h.violating_cycle {
        None => println!("{name}: exact (gap identity on V: {numeric})"),
        Some(c) => println!(
            "{name}: not exact, cycle {:?} has {} positive / {} negative edges (gap identity on V: {numeric})",
            c.vertices, c.positive_edges, c.negative_edges
        ),
    }
    assert!(h.is_consistent_with(g));
    Ok(())
}

pub fn run_example() -> bilingap::Result<()> {
    show("path +,-,-,+", &signed_path(5, &[1.0, -1.0, -1.0, 1.0])?)?;
    show("square +,+,-,-", &signed_cycle(4, &[1.0, 1.0, -1.0, -1.0])?)?;
    show("square +,+,+,-", &signed_cycle(4, &[1.0, 1.0, 1.0, -1.0])?)?;
    show("triangle +,+,+", &signed_cycle(3, &[1.0, 1.0, 1.0])?)?;
    let k4 = SignedWeightedGraph::new(
        4,
        [(1, 2, 1.0), (1, 3, -1.0), (1, 4, 2.0), (2, 3, 1.0), (2, 4, -3.0), (3, 4, 1.0)],
    )?;
    show("weighted K4", &k4)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hull_exactness example failed");
}
