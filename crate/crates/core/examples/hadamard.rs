// The Hadamard weighting: every cut is small, so the all-half gap ratio
// grows like sqrt(n) without any randomness.

use bilingap::envelopes::{gap_ratio, mcgap_halfpoint};
use bilingap::instances::hadamard_instance;
use bilingap::{cut_range, EvaluationPoint};

pub fn run_example() -> bilingap::Result<()> {
    println!("{:>3} {:>8} {:>8} {:>10} {:>8} {:>8}", "n", "mu+", "mu-", "bound", "ratio", "sqrt/3");
    for n in [4, 8, 12, 16, 20] {
        let g = hadamard_instance(n)?;
        let range = cut_range(&g, g.vertices())?;
        let bound = (n as f64).powf(1.5) / 2f64.sqrt();
        let mcgap = mcgap_halfpoint(&g, &EvaluationPoint::all_half(n)?)?;
        let (ratio, _) = gap_ratio(mcgap, 0.5 * range.spread(), g.total_abs_weight());
        println!(
            "{n:>3} {:>8} {:>8} {bound:>10.3} {:>8.3} {:>8.3}",
            range.mu_plus(),
            range.mu_minus(),
            ratio.value(),
            (n as f64).sqrt() / 3.0
        );
        assert!(range.mu_plus() <= bound + 1e-9 && range.mu_minus() >= -bound - 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hadamard example failed");
}
