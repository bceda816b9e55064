//! Bernoulli KL divergences, their inversions and the KL-UCB++ exploration
//! budget.
//!
//!     cargo run --example kl_indices

use thompson_budget::distributions::{bernoulli_kl, kl_lower_inverse, kl_upper_inverse};
use thompson_budget::policies::kl_ucb_pp_budget;

fn main() -> thompson_budget::Result<()> {
    println!("KL(0.8, 0.9) = {:.6}", bernoulli_kl(0.8, 0.9)?);
    for c in [0.01, 0.1, 1.0] {
        println!(
            "budget {c:>4}: confidence interval around 0.8 is [{:.6}, {:.6}]",
            kl_lower_inverse(0.8, c)?,
            kl_upper_inverse(0.8, c)?
        );
    }

    let (horizon, arms) = (100_000, 20);
    println!("\nKL-UCB++ index for an arm with empirical mean 0.8 (T={horizon}, K={arms}):");
    for pulls in [1, 10, 100, 1_000, 5_000] {
        let budget = kl_ucb_pp_budget(horizon, arms, pulls);
        println!(
            "  n={pulls:>5}  budget {budget:.6}  index {:.6}",
            kl_upper_inverse(0.8, budget)?
        );
    }
    Ok(())
}
