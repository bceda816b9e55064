//! Experiment orchestration: JSON specs, seeded parallel replications and
//! CSV persistence.
//!
//! Replication `r` of policy `p` always runs on
//! [`RngStream::for_replication`]`(seed, p, r)` and results are gathered in
//! `(p, r)` order, so the written files do not depend on the thread count.

mod output;
mod presets;
mod spec;

use rayon::prelude::*;

use crate::bandit::{run_episode, BanditInstance, RunMetrics};
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub use output::{
    fmt_real, summarize, write_outputs, ExperimentOutput, PolicySummary, LOWER_BOUND_HEADER,
    SUMMARY_HEADER,
};
pub use presets::{
    comparison_policies, Preset, PresetOptions, DEFAULT_REPLICATIONS, DESK_HORIZON, FULL_HORIZON,
};
pub use spec::{CheckpointSpec, ExperimentSpec, InstanceSpec, OUTPUT_DIR_ENV, SCHEMA_VERSION};

/// All replications of one policy, in replication order.
#[derive(Clone, Debug)]
pub struct PolicyRuns {
    pub policy_id: String,
    pub runs: Vec<RunMetrics>,
}

/// Run every (policy, replication) pair of `spec` without touching disk.
///
/// `threads = None` uses rayon's default pool size.
pub fn simulate(
    spec: &ExperimentSpec,
    threads: Option<usize>,
) -> Result<(BanditInstance, Vec<PolicyRuns>)> {
    let instance = spec.validate()?;
    let grid = spec.checkpoints.grid(spec.horizon);
    let jobs: Vec<(usize, usize)> = (0..spec.policies.len())
        .flat_map(|p| (0..spec.replications).map(move |r| (p, r)))
        .collect();

    let run_one = |&(p, r): &(usize, usize)| -> Result<RunMetrics> {
        let mut policy = spec.policies[p].build(instance.arms())?;
        let rng = RngStream::for_replication(spec.seed, p, r);
        run_episode(&instance, policy.as_mut(), spec.horizon, &rng, &grid)
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Parameter("thread count must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<RunMetrics>> = pool.install(|| jobs.par_iter().map(run_one).collect());

    let mut out: Vec<PolicyRuns> = spec
        .policies
        .iter()
        .map(|c| PolicyRuns {
            policy_id: c.id(),
            runs: Vec::with_capacity(spec.replications),
        })
        .collect();
    for ((p, _), res) in jobs.iter().zip(results) {
        out[*p].runs.push(res?);
    }
    Ok((instance, out))
}

/// Simulate `spec` and write its outputs to `spec.resolved_output_dir()`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    run_experiment_with(spec, None)
}

pub fn run_experiment_with(
    spec: &ExperimentSpec,
    threads: Option<usize>,
) -> Result<ExperimentOutput> {
    let (instance, runs) = simulate(spec, threads)?;
    write_outputs(spec, &instance, &runs, &spec.resolved_output_dir())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policies::{PolicyConfig, Prior};

    fn small() -> ExperimentSpec {
        ExperimentSpec {
            schema_version: SCHEMA_VERSION,
            instance: InstanceSpec::Means(vec![0.9, 0.8, 0.7]),
            policies: vec![
                PolicyConfig::VanillaTs {
                    prior: Prior::Gaussian,
                },
                PolicyConfig::TsTd { alpha: 0.5 },
            ],
            horizon: 300,
            replications: 3,
            seed: 11,
            checkpoints: CheckpointSpec::Geometric(20),
            output_dir: None,
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let (_, a) = simulate(&small(), Some(1)).unwrap();
        let (_, b) = simulate(&small(), Some(4)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.policy_id, y.policy_id);
            assert_eq!(x.runs, y.runs);
        }
    }

    #[test]
    fn adding_a_policy_keeps_earlier_streams() {
        let (_, a) = simulate(&small(), Some(2)).unwrap();
        let mut more = small();
        more.policies.push(PolicyConfig::KlUcbPp);
        let (_, b) = simulate(&more, Some(2)).unwrap();
        assert_eq!(a[0].runs, b[0].runs);
        assert_eq!(a[1].runs, b[1].runs);
    }

    #[test]
    fn single_arm_smoke_run_has_zero_regret() {
        let spec = ExperimentSpec {
            instance: InstanceSpec::Means(vec![0.5]),
            policies: vec![PolicyConfig::VanillaTs { prior: Prior::Beta }],
            horizon: 10,
            replications: 1,
            ..small()
        };
        let (_, runs) = simulate(&spec, Some(1)).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].runs.len(), 1);
        assert!(runs[0].runs[0].checkpoints.iter().all(|c| c.regret == 0.0));
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(simulate(&small(), Some(0)).is_err());
    }
}
