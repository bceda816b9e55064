//! Load a JSON experiment spec, run it and print where the CSV files went.
//!
//!     cargo run --example experiment_from_spec -- crates/core/examples/specs/small.json
//!
//! Output goes to the spec's `output_dir`, else `$TSBUDGET_OUT_DIR`, else
//! `./results`.

use thompson_budget::harness::run_experiment;
use thompson_budget::ExperimentSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/specs/small.json").to_string()
    });
    let spec = ExperimentSpec::from_json(&std::fs::read_to_string(&path)?)?;
    let out = run_experiment(&spec)?;
    for s in &out.summaries {
        println!(
            "{:<28} regret {:>8.1} ± {:<6.1}",
            s.policy_id, s.final_regret_mean, s.final_regret_se
        );
    }
    println!("results: {}", out.results_csv.display());
    println!("summary: {}", out.summary_csv.display());
    println!("lower bound: {}", out.lower_bound_csv.display());
    Ok(())
}
