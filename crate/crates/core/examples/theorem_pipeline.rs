//! Runs the full pipeline for a chosen k and prints the JSON report.
//!
//! `cargo run --example theorem_pipeline -- 3`

use wittlab::repro::{run_theorem_pipeline, PipelineConfig};

fn main() -> wittlab::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let report = run_theorem_pipeline(&PipelineConfig::new(k))?;
    println!("{}", report.to_json());
    eprintln!(
        "supports {} and {}, conclusion holds: {}",
        report.conclusion.support_plus, report.conclusion.support_minus, report.conclusion.holds
    );
    Ok(())
}
