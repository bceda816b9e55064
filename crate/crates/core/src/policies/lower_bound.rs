use crate::bandit::BanditInstance;
use crate::distributions::kl_unchecked;
use crate::error::{Error, Result};

/// Per-arm coefficients `Δ_i / KL(μ_i, μ*)`; zero for optimal arms.
pub fn lower_bound_coefficients(instance: &BanditInstance) -> Result<Vec<f64>> {
    let best = instance.best_mean();
    instance
        .means()
        .iter()
        .zip(instance.gaps())
        .enumerate()
        .map(|(i, (&mu, &gap))| {
            if gap == 0.0 {
                return Ok(0.0);
            }
            let kl = kl_unchecked(mu, best);
            if !kl.is_finite() || kl <= 0.0 {
                return Err(Error::Numerical(format!(
                    "KL({mu}, {best}) is {kl} for arm {i}; asymptotic lower bound undefined"
                )));
            }
            Ok(gap / kl)
        })
        .collect()
}

/// Asymptotic regret lower bound `Σ Δ_i ln(t) / KL(μ_i, μ*)` at a real time `t`.
pub fn lower_bound_at(instance: &BanditInstance, t: f64) -> Result<f64> {
    let total: f64 = lower_bound_coefficients(instance)?.iter().sum();
    Ok(total * t.ln())
}

/// [`lower_bound_at`] on a grid of rounds.
pub fn lower_bound_curve(instance: &BanditInstance, grid: &[u64]) -> Result<Vec<(u64, f64)>> {
    let total: f64 = lower_bound_coefficients(instance)?.iter().sum();
    Ok(grid.iter().map(|&t| (t, total * (t as f64).ln())).collect())
}
