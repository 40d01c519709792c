//! Runs a verification suite in-process and prints the human summary.
//!
//! `cargo run --release --example verify_suite -- poly 200`

use std::io::stdout;

use radius_bounds::error::Result;
use radius_bounds::harness::{emit, generate, run_suite, total_violations, EnsembleKind, EnsembleSpec, OutputFormat, RunConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "oracle-selftest".into());
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);

    let sample = generate(EnsembleSpec {
        kind: EnsembleKind::Nilpotent2,
        dim: 3,
        seed: 7,
    })?;
    println!("a NILPOTENT2 draw:\n{sample:?}\n");

    let cfg = RunConfig {
        trials,
        master_seed: 2024,
        ..RunConfig::default()
    };
    let reports = run_suite(&suite, &cfg)?;
    emit(&reports, OutputFormat::Human, &mut stdout())?;
    println!("\n{suite}: {} violations", total_violations(&reports));
    Ok(())
}
