//! Runs a seeded verification campaign programmatically and prints the
//! deterministic report body. The same seed gives a byte-identical body at
//! any parallelism degree.
//!
//!     cargo run --example verification_campaign

use ou_kit::campaign::{run_campaign, CampaignConfig, CheckKind};
use ou_kit::ring::Ring;

fn main() -> ou_kit::Result<()> {
    let config = CampaignConfig {
        rings: vec![Ring::integers(), Ring::twisted()],
        m_values: vec![1, 2],
        n_values: vec![0, 1],
        trials: 50,
        seed: 42,
        jobs: 2,
        checks: vec![
            CheckKind::Axioms,
            CheckKind::Forms,
            CheckKind::ThetaEta,
            CheckKind::Theorem32,
            CheckKind::Decompose,
            CheckKind::Diagnostics,
        ],
        fault: None,
    };

    let report = run_campaign(&config)?;
    print!("{}", report.summary());
    println!("passed: {}", report.passed());

    // Determinism: rerun at a different parallelism degree.
    let mut parallel = config.clone();
    parallel.jobs = 8;
    let report2 = run_campaign(&parallel)?;
    println!(
        "body identical at jobs=2 and jobs=8: {}",
        report.body_string() == report2.body_string()
    );
    Ok(())
}
