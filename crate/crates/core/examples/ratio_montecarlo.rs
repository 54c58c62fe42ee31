// Random +-1 complete graphs: the McCormick gap at the all-half point is
// |E|/2, the hull gap is half the cut spread, and their ratio tracks
// sqrt(n)/4. Runs the experiment driver in memory and prints CSV.

use bilingap::experiments::{run_experiment, write_outcome, ExperimentConfig, ExperimentKind, OutputFormat};

pub fn run_example() -> bilingap::Result<()> {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Thm1Montecarlo, 12, 16, 5);
    cfg.threads = 4;
    cfg.record_timing = false;
    let outcome = run_experiment(&cfg)?;
    let mut csv = Vec::new();
    write_outcome(&outcome, OutputFormat::Csv, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    let s = &outcome.summary;
    println!(
        "{} of {} instances reach sqrt(n)/4 ({:.0}%)",
        s.threshold_met,
        s.records,
        100.0 * s.success_fraction
    );
    assert_eq!(s.failures, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("ratio_montecarlo example failed");
}
