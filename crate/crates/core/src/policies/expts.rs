use super::{argmax, Policy};
use crate::bandit::{ArmState, DrawLedger};
use crate::distributions::{sample_expts, ExpTsParams};
use crate::error::Result;
use crate::rng::RngStream;

/// ExpTS+: with probability 1/K an arm's index is drawn from the KL-shaped
/// law anchored at its empirical mean with strength `n - 1`; otherwise the
/// index is the empirical mean.
#[derive(Clone, Debug, Default)]
pub struct ExpTsPlus {
    explore: f64,
    theta: Vec<f64>,
}

impl ExpTsPlus {
    pub fn new() -> Self {
        Self::default()
    }
}

pub(crate) fn expts_params(arm: &ArmState) -> ExpTsParams {
    ExpTsParams::new(arm.mean(), arm.pulls().saturating_sub(1) as f64).expect("mean lies in [0,1]")
}

impl Policy for ExpTsPlus {
    fn id(&self) -> String {
        "expts-plus".to_string()
    }

    fn initialize(&mut self, arms: usize, _horizon: u64) -> Result<()> {
        self.explore = 1.0 / arms as f64;
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
            self.theta[i] = if rng.coin(self.explore) {
                draws.record_exact(i, 1);
                sample_expts(&expts_params(arm), rng)
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
