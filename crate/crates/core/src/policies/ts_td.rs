//! Thompson Sampling with timestamp duelling.
//!
//! Between two pulls of an arm, the first `φ` rounds draw a fresh posterior
//! sample each (phase I) and fold it into a running maximum `ψ`; from then on
//! the arm reuses `ψ` without drawing (phase II). Pulling the arm resets both.

use super::{argmax, check_alpha, sample_budget, Policy};
use crate::bandit::{ArmState, DrawLedger};
use crate::distributions::{sample_gaussian, GaussianParams};
use crate::error::Result;
use crate::rng::RngStream;

#[derive(Clone, Debug)]
pub struct TsTd {
    alpha: f64,
    budget: u64,
    variance_scale: f64,
    used: Vec<u64>,
    best: Vec<f64>,
    theta: Vec<f64>,
}

impl TsTd {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(TsTd {
            alpha,
            budget: 1,
            variance_scale: 1.0,
            used: Vec::new(),
            best: Vec::new(),
            theta: Vec::new(),
        })
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Fresh samples used since each arm's last pull.
    pub fn used(&self) -> &[u64] {
        &self.used
    }

    /// Running maximum per arm; 0 for arms with no sample since their last pull.
    pub fn running_max(&self) -> &[f64] {
        &self.best
    }

    /// Indices used in the most recent selection.
    pub fn last_indices(&self) -> &[f64] {
        &self.theta
    }
}

impl Policy for TsTd {
    fn id(&self) -> String {
        format!("ts-td-alpha{}", self.alpha)
    }

    fn initialize(&mut self, arms: usize, horizon: u64) -> Result<()> {
        self.budget = sample_budget(horizon, self.alpha)?;
        self.variance_scale = if horizon < 2 {
            1.0
        } else {
            (horizon as f64).ln().powf(self.alpha)
        };
        self.used = vec![0; arms];
        self.best = vec![0.0; arms];
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
            if self.used[i] < self.budget {
                let p = GaussianParams::new(arm.mean(), self.variance_scale / arm.pulls() as f64)
                    .expect("pulled arm has finite posterior");
                let fresh = sample_gaussian(&p, rng);
                // The reset value 0 is a placeholder, not a sample: the first
                // fresh draw replaces it outright.
                self.best[i] = if self.used[i] == 0 {
                    fresh
                } else {
                    self.best[i].max(fresh)
                };
                self.used[i] += 1;
                self.theta[i] = fresh;
                draws.record_exact(i, 1);
            } else {
                debug_assert!(self.used[i] >= 1);
                self.theta[i] = self.best[i];
            }
        }
        argmax(&self.theta)
    }

    fn update(
        &mut self,
        arm: usize,
        _arms: &[ArmState],
        _rng: &mut RngStream,
        _draws: &mut DrawLedger,
    ) {
        self.used[arm] = 0;
        self.best[arm] = 0.0;
    }
}
