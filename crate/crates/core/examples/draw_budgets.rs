//! Posterior draws spent by each sampling policy on the same instance.
//!
//!     cargo run --example draw_budgets

use thompson_budget::harness::{
    simulate, summarize, CheckpointSpec, ExperimentSpec, InstanceSpec, SCHEMA_VERSION,
};
use thompson_budget::policies::{PolicyConfig, Prior, TsMaMode};

fn main() -> thompson_budget::Result<()> {
    let spec = ExperimentSpec {
        schema_version: SCHEMA_VERSION,
        instance: InstanceSpec::TwoLevel {
            arms: 20,
            optimal: 1,
            best: 0.9,
            other: 0.8,
        },
        policies: vec![
            PolicyConfig::VanillaTs {
                prior: Prior::Gaussian,
            },
            PolicyConfig::EpsilonTs {
                epsilon: 0.05,
                prior: Prior::Gaussian,
            },
            PolicyConfig::ExptsPlus,
            PolicyConfig::TsMa {
                alpha: 0.8,
                mode: TsMaMode::Efficient,
            },
            PolicyConfig::TsTd { alpha: 0.8 },
            PolicyConfig::KlUcbPp,
        ],
        horizon: 20_000,
        replications: 4,
        seed: 1,
        checkpoints: CheckpointSpec::Rounds(vec![]),
        output_dir: None,
    };
    let (_, runs) = simulate(&spec, None)?;
    let summaries = summarize(&runs);
    println!(
        "{:<28} {:>10} {:>14} {:>14} {:>9}",
        "policy", "regret", "logical draws", "physical", "% best"
    );
    for (p, s) in runs.iter().zip(&summaries) {
        let physical = p
            .runs
            .iter()
            .map(|m| m.draws.physical_total() as f64)
            .sum::<f64>()
            / p.runs.len() as f64;
        println!(
            "{:<28} {:>10.1} {:>14.0} {:>14.0} {:>9.2}",
            s.policy_id,
            s.final_regret_mean,
            s.draws_total_mean,
            physical,
            s.pct_draws_optimal_mean
        );
    }
    Ok(())
}
