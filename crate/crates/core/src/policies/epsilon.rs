use super::vanilla::posterior_sample;
use super::{argmax, Policy, Prior};
use crate::bandit::{ArmState, DrawLedger};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// ε-TS: each arm independently uses a posterior sample with probability ε
/// and its empirical mean otherwise.
#[derive(Clone, Debug)]
pub struct EpsilonTs {
    epsilon: f64,
    prior: Prior,
    theta: Vec<f64>,
}

impl EpsilonTs {
    pub fn new(epsilon: f64, prior: Prior) -> Self {
        EpsilonTs {
            epsilon,
            prior,
            theta: Vec::new(),
        }
    }

    /// ε must lie in `[1/K, 1]`. A relative slack of 1e-12 on the lower end
    /// admits `1/K` written out as a decimal.
    pub fn check_epsilon(epsilon: f64, arms: usize) -> Result<()> {
        let floor = 1.0 / arms as f64;
        if epsilon >= floor * (1.0 - 1e-12) && epsilon <= 1.0 {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "epsilon must lie in [1/K, 1] = [{floor}, 1], got {epsilon}"
            )))
        }
    }
}

impl Policy for EpsilonTs {
    fn id(&self) -> String {
        format!("eps-ts-{}-eps{}", self.prior.label(), self.epsilon)
    }

    fn initialize(&mut self, arms: usize, _horizon: u64) -> Result<()> {
        Self::check_epsilon(self.epsilon, arms)?;
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
        let always = self.epsilon >= 1.0;
        for (i, arm) in arms.iter().enumerate() {
            // At ε = 1 no coin is flipped, so the stream matches Vanilla TS.
            self.theta[i] = if always || rng.coin(self.epsilon) {
                draws.record_exact(i, 1);
                posterior_sample(self.prior, arm, rng)
            } else {
                arm.mean()
            };
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
