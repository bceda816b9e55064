use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bandit::{geometric_checkpoints, BanditInstance};
use crate::error::{Error, Result};
use crate::policies::PolicyConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "TSBUDGET_OUT_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    /// Bernoulli arms with the listed means.
    Means(Vec<f64>),
    /// `optimal` Bernoulli arms at `best`, the rest at `other`.
    TwoLevel {
        arms: usize,
        optimal: usize,
        best: f64,
        other: f64,
    },
}

impl InstanceSpec {
    pub fn build(&self) -> Result<BanditInstance> {
        match self {
            InstanceSpec::Means(means) => BanditInstance::bernoulli(means),
            InstanceSpec::TwoLevel {
                arms,
                optimal,
                best,
                other,
            } => BanditInstance::two_level(*arms, *optimal, *best, *other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckpointSpec {
    /// About this many geometrically spaced rounds, plus the horizon.
    Geometric(usize),
    /// Explicit rounds; the horizon is always added.
    Rounds(Vec<u64>),
}

impl Default for CheckpointSpec {
    fn default() -> Self {
        CheckpointSpec::Geometric(200)
    }
}

impl CheckpointSpec {
    pub fn grid(&self, horizon: u64) -> Vec<u64> {
        let mut g = match self {
            CheckpointSpec::Geometric(n) => geometric_checkpoints(horizon, *n),
            CheckpointSpec::Rounds(r) => r
                .iter()
                .copied()
                .filter(|&t| t >= 1 && t <= horizon)
                .collect(),
        };
        g.push(horizon);
        g.sort_unstable();
        g.dedup();
        g
    }
}

/// One experiment: every policy is run `replications` times on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub schema_version: u32,
    pub instance: InstanceSpec,
    pub policies: Vec<PolicyConfig>,
    pub horizon: u64,
    pub replications: usize,
    pub seed: u64,
    #[serde(default)]
    pub checkpoints: CheckpointSpec,
    /// Falls back to `$TSBUDGET_OUT_DIR`, then `./results`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn validate(&self) -> Result<BanditInstance> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Spec(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let instance = self.instance.build()?;
        if self.replications == 0 {
            return Err(Error::Spec("replications must be >= 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Spec("at least one policy is required".into()));
        }
        if self.horizon < instance.arms() as u64 {
            return Err(Error::Spec(format!(
                "horizon {} is shorter than the arm count {}",
                self.horizon,
                instance.arms()
            )));
        }
        if let CheckpointSpec::Geometric(0) = self.checkpoints {
            return Err(Error::Spec(
                "geometric checkpoint count must be >= 1".into(),
            ));
        }
        for p in &self.policies {
            p.validate(instance.arms())?;
        }
        Ok(instance)
    }

    pub fn resolved_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("results"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policies::Prior;

    fn sample() -> ExperimentSpec {
        ExperimentSpec {
            schema_version: 1,
            instance: InstanceSpec::Means(vec![0.9, 0.8]),
            policies: vec![PolicyConfig::VanillaTs { prior: Prior::Beta }],
            horizon: 100,
            replications: 2,
            seed: 1,
            checkpoints: CheckpointSpec::default(),
            output_dir: None,
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = sample();
        assert_eq!(ExperimentSpec::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn parses_documented_example() {
        let text = r#"{
            "schema_version": 1,
            "instance": {"two_level": {"arms": 20, "optimal": 1, "best": 0.9, "other": 0.8}},
            "policies": [
                {"kind": "ts_ma", "alpha": 0.8},
                {"kind": "epsilon_ts", "epsilon": 0.05, "prior": "gaussian"},
                {"kind": "kl_ucb_pp"}
            ],
            "horizon": 1000,
            "replications": 3,
            "seed": 7,
            "checkpoints": {"rounds": [10, 100]}
        }"#;
        let s = ExperimentSpec::from_json(text).unwrap();
        assert_eq!(s.checkpoints.grid(1000), vec![10, 100, 1000]);
    }

    #[test]
    fn rejects_unknown_keys() {
        let mut v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        v["colour"] = serde_json::json!("red");
        assert!(ExperimentSpec::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn rejects_invalid_specs() {
        let mut s = sample();
        s.replications = 0;
        assert!(s.validate().is_err());
        let mut s = sample();
        s.horizon = 1;
        assert!(s.validate().is_err());
        let mut s = sample();
        s.schema_version = 2;
        assert!(s.validate().is_err());
        let mut s = sample();
        s.policies.clear();
        assert!(s.validate().is_err());
    }
}
