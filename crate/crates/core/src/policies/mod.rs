//! Arm-selection policies behind one contract.
//!
//! The episode loop calls [`Policy::update`] after every pull, including the
//! K initialization pulls, and [`Policy::select`] for every later round. Both
//! calls report the posterior draws they consume into a [`DrawLedger`].

mod epsilon;
mod expts;
mod kl_ucb;
mod lower_bound;
mod ts_ma;
mod ts_td;
mod vanilla;

pub use epsilon::EpsilonTs;
pub use expts::ExpTsPlus;
pub use kl_ucb::{kl_ucb_pp_budget, KlUcbPlusPlus};
pub use lower_bound::{lower_bound_at, lower_bound_coefficients, lower_bound_curve};
pub use ts_ma::{TsMa, TsMaMode};
pub use ts_td::TsTd;
pub use vanilla::VanillaTs;

use serde::{Deserialize, Serialize};

use crate::bandit::{ArmState, DrawLedger};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// `1 / (2 sqrt(2 e π))`.
pub const C0: f64 = 0.120_985_362_259_571_7;

pub trait Policy: Send {
    /// Stable identifier, used as `policy_id` in result files.
    fn id(&self) -> String;

    /// Reset all internal state for a fresh episode.
    fn initialize(&mut self, arms: usize, horizon: u64) -> Result<()>;

    /// Choose the arm to pull in round `t`.
    fn select(
        &mut self,
        t: u64,
        arms: &[ArmState],
        rng: &mut RngStream,
        draws: &mut DrawLedger,
    ) -> usize;

    /// Called after `arm` was pulled; `arms` already includes the new reward.
    fn update(
        &mut self,
        arm: usize,
        arms: &[ArmState],
        rng: &mut RngStream,
        draws: &mut DrawLedger,
    );
}

/// Prior family for the Thompson-style baselines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prior {
    Gaussian,
    Beta,
}

impl Prior {
    fn label(self) -> &'static str {
        match self {
            Prior::Gaussian => "gaussian",
            Prior::Beta => "beta",
        }
    }
}

/// Declarative policy description, as found in experiment spec files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolicyConfig {
    VanillaTs {
        prior: Prior,
    },
    TsMa {
        alpha: f64,
        #[serde(default)]
        mode: TsMaMode,
    },
    TsTd {
        alpha: f64,
    },
    EpsilonTs {
        epsilon: f64,
        prior: Prior,
    },
    ExptsPlus,
    KlUcbPp,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "alpha must lie in [0,1], got {alpha}"
        )))
    }
}

impl PolicyConfig {
    pub fn validate(&self, arms: usize) -> Result<()> {
        match *self {
            PolicyConfig::TsMa { alpha, .. } | PolicyConfig::TsTd { alpha } => check_alpha(alpha),
            PolicyConfig::EpsilonTs { epsilon, .. } => EpsilonTs::check_epsilon(epsilon, arms),
            _ => Ok(()),
        }
    }

    pub fn build(&self, arms: usize) -> Result<Box<dyn Policy>> {
        self.validate(arms)?;
        Ok(match *self {
            PolicyConfig::VanillaTs { prior } => Box::new(VanillaTs::new(prior)),
            PolicyConfig::TsMa { alpha, mode } => Box::new(TsMa::new(alpha, mode)?),
            PolicyConfig::TsTd { alpha } => Box::new(TsTd::new(alpha)?),
            PolicyConfig::EpsilonTs { epsilon, prior } => Box::new(EpsilonTs::new(epsilon, prior)),
            PolicyConfig::ExptsPlus => Box::new(ExpTsPlus::new()),
            PolicyConfig::KlUcbPp => Box::new(KlUcbPlusPlus::new()),
        })
    }

    /// Same string as the built policy's [`Policy::id`].
    pub fn id(&self) -> String {
        match *self {
            PolicyConfig::VanillaTs { prior } => format!("vanilla-ts-{}", prior.label()),
            PolicyConfig::TsMa { alpha, mode } => match mode {
                TsMaMode::Efficient => format!("ts-ma-alpha{alpha}"),
                TsMaMode::Naive => format!("ts-ma-alpha{alpha}-naive"),
            },
            PolicyConfig::TsTd { alpha } => format!("ts-td-alpha{alpha}"),
            PolicyConfig::EpsilonTs { epsilon, prior } => {
                format!("eps-ts-{}-eps{epsilon}", prior.label())
            }
            PolicyConfig::ExptsPlus => "expts-plus".to_string(),
            PolicyConfig::KlUcbPp => "kl-ucb-pp".to_string(),
        }
    }
}

/// Per-refresh sample budget `ceil(2 T^{(1-α)/2} ln^{(3-α)/2}(T) / c0)`,
/// at least 1.
pub fn sample_budget(horizon: u64, alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    if horizon < 2 {
        return Ok(1);
    }
    let t = horizon as f64;
    let phi = 2.0 * t.powf(0.5 * (1.0 - alpha)) * t.ln().powf(0.5 * (3.0 - alpha)) / C0;
    Ok((phi.ceil() as u64).max(1))
}

/// Index of the largest value; the lowest index wins ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c0_value() {
        let c0 = 1.0 / (2.0 * (2.0 * std::f64::consts::E * std::f64::consts::PI).sqrt());
        assert!((C0 - c0).abs() < 1e-16);
    }

    #[test]
    fn budget_alpha_one() {
        // ceil(2 ln(1e5) / c0) = ceil(190.319...)
        assert_eq!(sample_budget(100_000, 1.0).unwrap(), 191);
    }

    #[test]
    fn budget_alpha_zero_exceeds_horizon() {
        assert!(sample_budget(100_000, 0.0).unwrap() >= 100_000);
    }

    #[test]
    fn budget_rejects_bad_alpha() {
        assert!(sample_budget(100, 1.5).is_err());
        assert!(sample_budget(100, -0.1).is_err());
    }

    #[test]
    fn argmax_ties_go_low() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), 1);
        assert_eq!(argmax(&[5.0]), 0);
    }

    #[test]
    fn argmax_shift_invariant() {
        let v = [0.3, -1.2, 0.9, 0.89];
        let shifted: Vec<f64> = v.iter().map(|x| x + 17.5).collect();
        assert_eq!(argmax(&v), argmax(&shifted));
    }

    #[test]
    fn config_roundtrip_and_ids() {
        let cfgs = vec![
            PolicyConfig::VanillaTs { prior: Prior::Beta },
            PolicyConfig::TsMa {
                alpha: 0.8,
                mode: TsMaMode::Naive,
            },
            PolicyConfig::TsTd { alpha: 1.0 },
            PolicyConfig::EpsilonTs {
                epsilon: 0.05,
                prior: Prior::Gaussian,
            },
            PolicyConfig::ExptsPlus,
            PolicyConfig::KlUcbPp,
        ];
        for c in &cfgs {
            let json = serde_json::to_string(c).unwrap();
            let back: PolicyConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, c);
            assert_eq!(c.build(20).unwrap().id(), c.id());
            assert!(!c.id().contains(','));
        }
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let bad = r#"{"kind":"ts_td","alpha":0.5,"beta":1}"#;
        assert!(serde_json::from_str::<PolicyConfig>(bad).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(PolicyConfig::TsTd { alpha: 2.0 }.build(5).is_err());
        assert!(PolicyConfig::EpsilonTs {
            epsilon: 0.01,
            prior: Prior::Beta
        }
        .build(20)
        .is_err());
    }
}
