//! Play one TS-TD episode on a 20-arm instance and watch its draw count and
//! regret evolve.
//!
//!     cargo run --example single_episode -- 0.8

use thompson_budget::policies::{sample_budget, PolicyConfig};
use thompson_budget::{run_episode, BanditInstance, RngStream};

fn main() -> thompson_budget::Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map_or(Ok(0.8), |a| a.parse())
        .expect("alpha must be a number");
    let horizon = 20_000;
    let instance = BanditInstance::two_level(20, 1, 0.9, 0.8)?;
    let cfg = PolicyConfig::TsTd { alpha };
    let mut policy = cfg.build(instance.arms())?;

    let grid = [100, 1_000, 5_000, 10_000, 20_000];
    let m = run_episode(
        &instance,
        policy.as_mut(),
        horizon,
        &RngStream::new(42),
        &grid,
    )?;

    println!(
        "{} with per-pull budget {}",
        cfg.id(),
        sample_budget(horizon, alpha)?
    );
    println!(
        "{:>7} {:>9} {:>10} {:>10}",
        "t", "regret", "draws", "on best"
    );
    for c in &m.checkpoints {
        println!(
            "{:>7} {:>9.1} {:>10} {:>10}",
            c.t, c.regret, c.draws_total, c.draws_optimal
        );
    }
    println!("pulls: {:?}", m.pulls);
    println!(
        "uniform-policy regret: {:.1}",
        instance.uniform_regret(horizon)
    );
    Ok(())
}
