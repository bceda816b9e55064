use super::{argmax, Policy};
use crate::bandit::{ArmState, DrawLedger};
use crate::distributions::upper_unchecked;
use crate::error::Result;
use crate::rng::RngStream;

fn lnbar(x: f64) -> f64 {
    x.ln().max(0.0)
}

/// Exploration budget of KL-UCB++ for an arm with `pulls` observations:
/// `lnbar(T (lnbar²(T/(K n)) + 1) / (K n)) / n`.
pub fn kl_ucb_pp_budget(horizon: u64, arms: usize, pulls: u64) -> f64 {
    let t = horizon as f64;
    let kn = arms as f64 * pulls as f64;
    let inner = lnbar(t / kn);
    lnbar(t * (inner * inner + 1.0) / kn) / pulls as f64
}

/// KL-UCB++. Deterministic; the index of an arm depends only on its own
/// statistics, so it is recomputed only when that arm is pulled.
#[derive(Clone, Debug, Default)]
pub struct KlUcbPlusPlus {
    horizon: u64,
    index: Vec<f64>,
}

impl KlUcbPlusPlus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn indices(&self) -> &[f64] {
        &self.index
    }
}

impl Policy for KlUcbPlusPlus {
    fn id(&self) -> String {
        "kl-ucb-pp".to_string()
    }

    fn initialize(&mut self, arms: usize, horizon: u64) -> Result<()> {
        self.horizon = horizon;
        self.index = vec![f64::INFINITY; arms];
        Ok(())
    }

    fn select(
        &mut self,
        _t: u64,
        _arms: &[ArmState],
        _rng: &mut RngStream,
        _draws: &mut DrawLedger,
    ) -> usize {
        argmax(&self.index)
    }

    fn update(
        &mut self,
        arm: usize,
        arms: &[ArmState],
        _rng: &mut RngStream,
        _draws: &mut DrawLedger,
    ) {
        let state = &arms[arm];
        let budget = kl_ucb_pp_budget(self.horizon, arms.len(), state.pulls());
        self.index[arm] = upper_unchecked(state.mean(), budget);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_at_t_over_k() {
        assert_eq!(kl_ucb_pp_budget(1000, 10, 100), 0.0);
        let mut p = KlUcbPlusPlus::new();
        p.initialize(10, 1000).unwrap();
        let arms = vec![ArmState::new(100, 0.42); 10];
        let mut rng = RngStream::new(0);
        p.update(3, &arms, &mut rng, &mut DrawLedger::new(10));
        assert_eq!(p.indices()[3], 0.42);
    }

    #[test]
    fn budget_nonincreasing_in_pulls() {
        let mut prev = f64::INFINITY;
        for n in 1..6000 {
            let b = kl_ucb_pp_budget(100_000, 20, n);
            assert!(b <= prev + 1e-15, "n={n}");
            assert!(b >= 0.0);
            prev = b;
        }
    }

    #[test]
    fn analytic_index_at_zero_mean() {
        let b = kl_ucb_pp_budget(100_000, 20, 10);
        // T/(Kn) = 500
        let inner = 500f64.ln();
        let expected = (500.0 * (inner * inner + 1.0)).ln() / 10.0;
        assert!((b - expected).abs() < 1e-15);
        let idx = upper_unchecked(0.0, b);
        assert!((idx - (1.0 - (-b).exp())).abs() <= 1e-9);
    }

    #[test]
    fn no_draws_reported() {
        let mut p = KlUcbPlusPlus::new();
        p.initialize(3, 100).unwrap();
        let arms = vec![ArmState::new(2, 0.5); 3];
        let mut rng = RngStream::new(0);
        let mut ledger = DrawLedger::new(3);
        for i in 0..3 {
            p.update(i, &arms, &mut rng, &mut ledger);
        }
        p.select(4, &arms, &mut rng, &mut ledger);
        assert_eq!(ledger.physical_total(), 0);
        assert_eq!(rng.posterior_draws(), 0);
    }
}
