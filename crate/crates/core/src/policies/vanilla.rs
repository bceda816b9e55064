use super::{argmax, Policy, Prior};
use crate::bandit::{ArmState, DrawLedger};
use crate::distributions::{sample_beta, sample_gaussian, BetaParams, GaussianParams};
use crate::error::Result;
use crate::rng::RngStream;

/// Draw one posterior sample for an arm. Gaussian: `N(μ̂, 1/n)`; Beta:
/// `Beta(μ̂n + 1, (1 - μ̂)n + 1)`.
pub(crate) fn posterior_sample(prior: Prior, arm: &ArmState, rng: &mut RngStream) -> f64 {
    let n = arm.pulls();
    match prior {
        Prior::Gaussian => {
            let p =
                GaussianParams::new(arm.mean(), 1.0 / n as f64).expect("arm pulled at least once");
            sample_gaussian(&p, rng)
        }
        Prior::Beta => {
            let p = BetaParams::posterior(arm.mean(), n).expect("nonnegative pull count");
            sample_beta(&p, rng)
        }
    }
}

/// Thompson Sampling with one fresh posterior sample per arm per round.
#[derive(Clone, Debug)]
pub struct VanillaTs {
    prior: Prior,
    theta: Vec<f64>,
}

impl VanillaTs {
    pub fn new(prior: Prior) -> Self {
        VanillaTs {
            prior,
            theta: Vec::new(),
        }
    }
}

impl Policy for VanillaTs {
    fn id(&self) -> String {
        format!("vanilla-ts-{}", self.prior.label())
    }

    fn initialize(&mut self, arms: usize, _horizon: u64) -> Result<()> {
        self.theta = vec![0.0; arms];
        Ok(())
    }

    fn select(
        &mut self,
        _t: u64,
        arms: &[ArmState],
        rng: &mut RngStream,
        draws: &mut DrawLedger,
    ) -> usize {
        for (i, arm) in arms.iter().enumerate() {
            self.theta[i] = posterior_sample(self.prior, arm, rng);
            draws.record_exact(i, 1);
        }
        argmax(&self.theta)
    }

    fn update(
        &mut self,
        _arm: usize,
        _arms: &[ArmState],
        _rng: &mut RngStream,
        _draws: &mut DrawLedger,
    ) {
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::normal_cdf;

    fn select_freq(prior: Prior, arms: &[ArmState], rounds: usize, seed: u64) -> Vec<f64> {
        let mut p = VanillaTs::new(prior);
        p.initialize(arms.len(), 1000).unwrap();
        let mut rng = RngStream::new(seed);
        let mut ledger = DrawLedger::new(arms.len());
        let mut counts = vec![0usize; arms.len()];
        for t in 0..rounds {
            counts[p.select(t as u64, arms, &mut rng, &mut ledger)] += 1;
        }
        assert_eq!(ledger.physical_total(), (rounds * arms.len()) as u64);
        assert_eq!(rng.posterior_draws(), (rounds * arms.len()) as u64);
        counts.iter().map(|&c| c as f64 / rounds as f64).collect()
    }

    #[test]
    fn exchangeable_arms_split_evenly() {
        let arms = [ArmState::new(10, 0.6), ArmState::new(10, 0.6)];
        for prior in [Prior::Gaussian, Prior::Beta] {
            let f = select_freq(prior, &arms, 100_000, 3);
            assert!((f[0] - 0.5).abs() <= 0.01, "{prior:?}: {f:?}");
        }
    }

    #[test]
    fn well_separated_arms() {
        // P{N(0.9,1e-4) < N(0.1,1e-4)} = Φ(-0.8 / sqrt(2e-4)), essentially zero.
        let miss = normal_cdf(-0.8 / 2e-4f64.sqrt());
        assert!(miss < 1e-100);
        let arms = [ArmState::new(10_000, 0.1), ArmState::new(10_000, 0.9)];
        let f = select_freq(Prior::Gaussian, &arms, 10_000, 4);
        assert!(f[1] >= 0.999);
    }

    #[test]
    fn beta_posterior_for_single_success() {
        let arm = ArmState::new(1, 1.0);
        let mut rng = RngStream::new(8);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| posterior_sample(Prior::Beta, &arm, &mut rng))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 2.0 / 3.0).abs() < 0.005);
    }
}
