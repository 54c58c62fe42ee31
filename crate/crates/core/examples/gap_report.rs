// McCormick vs convex-hull envelopes of a small bilinear function, at a
// half-point (closed form) and at a generic point (hull LP).

use bilingap::{gap_report, EvaluationPoint, SignedWeightedGraph};

pub fn run_example() -> bilingap::Result<()> {
    // b(x) = x1 x2 + x2 x3 + x1 x3: the positive triangle
    let g = SignedWeightedGraph::new(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)])?;

    let half = EvaluationPoint::all_half(3)?;
    let r = gap_report(&g, &half)?;
    println!("x = {:?}", half.coords());
    println!("  mcu {:.4}  cav {:.4}  vex {:.4}  mcl {:.4}", r.mcu, r.cav, r.vex, r.mcl);
    println!("  mcgap {:.4}  chgap {:.4}  ratio {}", r.mcgap, r.chgap, r.ratio);
    assert_eq!(r.mcgap, 1.5);
    assert!((r.chgap - 1.0).abs() < 1e-12);

    let x = EvaluationPoint::new(vec![0.3, 0.7, 0.55])?;
    let r = gap_report(&g, &x)?;
    println!("x = {:?} ({:?})", x.coords(), r.method);
    println!("  mcu {:.4}  cav {:.4}  vex {:.4}  mcl {:.4}", r.mcu, r.cav, r.vex, r.mcl);
    assert!(r.mcl <= r.vex + 1e-9 && r.vex <= r.cav + 1e-9 && r.cav <= r.mcu + 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gap_report example failed");
}
