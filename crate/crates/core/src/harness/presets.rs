//! Ready-made experiments reproducing the regret curves and the two
//! draw-count studies on the 20-arm Bernoulli instance.

use serde::{Deserialize, Serialize};

use super::spec::{CheckpointSpec, ExperimentSpec, InstanceSpec, SCHEMA_VERSION};
use crate::policies::{PolicyConfig, Prior, TsMaMode};

/// Horizon used by the draw-count studies at full scale.
pub const FULL_HORIZON: u64 = 1_000_000;
pub const DESK_HORIZON: u64 = 100_000;
pub const DEFAULT_REPLICATIONS: usize = 50;
pub const ARMS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Regret of every policy, one optimal arm.
    Fig1,
    /// TS-TD posterior draws for one vs. ten optimal arms.
    Fig2,
    /// TS-MA share of draws spent on optimal arms, one vs. ten optimal arms.
    Fig3,
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(format!(
                "unknown preset {other:?} (expected fig1, fig2 or fig3)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PresetOptions {
    pub horizon: u64,
    pub replications: usize,
    pub seed: u64,
}

impl Default for PresetOptions {
    fn default() -> Self {
        PresetOptions {
            horizon: DESK_HORIZON,
            replications: DEFAULT_REPLICATIONS,
            seed: 7,
        }
    }
}

/// Every policy in the regret comparison for `arms` arms and the given
/// TS-MA / TS-TD trade-off values.
pub fn comparison_policies(arms: usize, alphas: &[f64]) -> Vec<PolicyConfig> {
    let k = arms as f64;
    let epsilons = [1.0 / k, 1.0 / k.sqrt(), 1.0];
    let mut out = vec![
        PolicyConfig::VanillaTs {
            prior: Prior::Gaussian,
        },
        PolicyConfig::VanillaTs { prior: Prior::Beta },
    ];
    for prior in [Prior::Gaussian, Prior::Beta] {
        for &epsilon in &epsilons {
            out.push(PolicyConfig::EpsilonTs { epsilon, prior });
        }
    }
    out.push(PolicyConfig::ExptsPlus);
    out.push(PolicyConfig::KlUcbPp);
    for &alpha in alphas {
        out.push(PolicyConfig::TsMa {
            alpha,
            mode: TsMaMode::Efficient,
        });
        out.push(PolicyConfig::TsTd { alpha });
    }
    out
}

fn spec(opts: &PresetOptions, optimal: usize, policies: Vec<PolicyConfig>) -> ExperimentSpec {
    ExperimentSpec {
        schema_version: SCHEMA_VERSION,
        instance: InstanceSpec::TwoLevel {
            arms: ARMS,
            optimal,
            best: 0.9,
            other: 0.8,
        },
        policies,
        horizon: opts.horizon,
        replications: opts.replications,
        seed: opts.seed,
        checkpoints: CheckpointSpec::default(),
        output_dir: None,
    }
}

impl Preset {
    /// Experiments making up the preset, each with a subdirectory label.
    pub fn specs(self, opts: &PresetOptions) -> Vec<(String, ExperimentSpec)> {
        let alphas = [0.0, 0.8, 0.9, 1.0];
        match self {
            Preset::Fig1 => vec![(
                "fig1".to_string(),
                spec(opts, 1, comparison_policies(ARMS, &[0.0, 0.8, 1.0])),
            )],
            Preset::Fig2 => [1, ARMS / 2]
                .iter()
                .map(|&m| {
                    let policies = alphas
                        .iter()
                        .map(|&alpha| PolicyConfig::TsTd { alpha })
                        .collect();
                    (format!("fig2/m{m}"), spec(opts, m, policies))
                })
                .collect(),
            Preset::Fig3 => [1, ARMS / 2]
                .iter()
                .map(|&m| {
                    let policies = alphas
                        .iter()
                        .map(|&alpha| PolicyConfig::TsMa {
                            alpha,
                            mode: TsMaMode::Efficient,
                        })
                        .collect();
                    (format!("fig3/m{m}"), spec(opts, m, policies))
                })
                .collect(),
        }
    }
}
