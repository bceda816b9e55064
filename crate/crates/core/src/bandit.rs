//! Bandit instances and the round-by-round episode loop.
//!
//! Regret is pseudo-regret: every pull of arm `i` costs exactly its gap, so
//! the trajectory is a deterministic function of the pull counts.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::policies::Policy;
use crate::rng::RngStream;

/// Reward sampler for a non-Bernoulli arm. Must return values in `[0, 1]`.
pub type RewardSampler = Arc<dyn Fn(&mut RngStream) -> f64 + Send + Sync>;

/// Reward distribution of one arm, supported on `[0, 1]`.
#[derive(Clone)]
pub enum RewardModel {
    Bernoulli(f64),
    /// Arbitrary law on `[0, 1]` given by a sampler and its exact mean.
    Custom {
        mean: f64,
        sampler: RewardSampler,
    },
}

impl RewardModel {
    pub fn mean(&self) -> f64 {
        match self {
            RewardModel::Bernoulli(p) => *p,
            RewardModel::Custom { mean, .. } => *mean,
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        match self {
            RewardModel::Bernoulli(p) => {
                if rng.coin(*p) {
                    1.0
                } else {
                    0.0
                }
            }
            RewardModel::Custom { sampler, .. } => sampler(rng).clamp(0.0, 1.0),
        }
    }
}

impl fmt::Debug for RewardModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewardModel::Bernoulli(p) => write!(f, "Bernoulli({p})"),
            RewardModel::Custom { mean, .. } => write!(f, "Custom(mean={mean})"),
        }
    }
}

/// Family used by [`BanditInstance::new`] to turn a list of means into arms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RewardFamily {
    #[default]
    Bernoulli,
}

#[derive(Clone, Debug)]
pub struct BanditInstance {
    arms: Vec<RewardModel>,
    means: Vec<f64>,
    gaps: Vec<f64>,
    best_mean: f64,
    optimal: Vec<bool>,
}

impl BanditInstance {
    pub fn new(means: &[f64], family: RewardFamily) -> Result<Self> {
        let arms = means
            .iter()
            .map(|&m| match family {
                RewardFamily::Bernoulli => RewardModel::Bernoulli(m),
            })
            .collect();
        Self::from_arms(arms)
    }

    pub fn bernoulli(means: &[f64]) -> Result<Self> {
        Self::new(means, RewardFamily::Bernoulli)
    }

    pub fn from_arms(arms: Vec<RewardModel>) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::Instance("at least one arm is required".into()));
        }
        let means: Vec<f64> = arms.iter().map(RewardModel::mean).collect();
        if let Some((i, m)) = means
            .iter()
            .enumerate()
            .find(|(_, m)| !(0.0..=1.0).contains(*m))
        {
            return Err(Error::Instance(format!(
                "mean of arm {i} is {m}, outside [0,1]"
            )));
        }
        let best_mean = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gaps: Vec<f64> = means.iter().map(|m| best_mean - m).collect();
        let optimal = gaps.iter().map(|&g| g == 0.0).collect();
        Ok(BanditInstance {
            arms,
            means,
            gaps,
            best_mean,
            optimal,
        })
    }

    /// `optimal` arms at `best`, the remaining `arms - optimal` at `other`.
    pub fn two_level(arms: usize, optimal: usize, best: f64, other: f64) -> Result<Self> {
        if optimal == 0 || optimal > arms {
            return Err(Error::Instance(format!(
                "need 1..={arms} optimal arms, got {optimal}"
            )));
        }
        let means: Vec<f64> = (0..arms)
            .map(|i| if i < optimal { best } else { other })
            .collect();
        Self::bernoulli(&means)
    }

    pub fn arms(&self) -> usize {
        self.arms.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn best_mean(&self) -> f64 {
        self.best_mean
    }

    pub fn is_optimal(&self, arm: usize) -> bool {
        self.optimal[arm]
    }

    pub fn optimal_count(&self) -> usize {
        self.optimal.iter().filter(|&&o| o).count()
    }

    pub fn model(&self, arm: usize) -> &RewardModel {
        &self.arms[arm]
    }

    /// Pseudo-regret of a uniformly random policy over `horizon` rounds.
    pub fn uniform_regret(&self, horizon: u64) -> f64 {
        self.gaps.iter().sum::<f64>() * horizon as f64 / self.arms() as f64
    }
}

/// Pull count and empirical mean of one arm.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ArmState {
    pulls: u64,
    reward_sum: f64,
}

impl ArmState {
    pub fn new(pulls: u64, mean: f64) -> Self {
        ArmState {
            pulls,
            reward_sum: mean * pulls as f64,
        }
    }

    pub fn record(&mut self, reward: f64) {
        self.pulls += 1;
        self.reward_sum += reward;
    }

    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    /// Empirical mean; 0 before the first pull.
    pub fn mean(&self) -> f64 {
        if self.pulls == 0 {
            0.0
        } else {
            (self.reward_sum / self.pulls as f64).clamp(0.0, 1.0)
        }
    }
}

/// Per-arm tally of posterior draws reported by a policy.
///
/// `physical` counts samples actually produced; `logical` counts samples the
/// algorithm is defined to draw. They differ only when a batch maximum is
/// produced from a single inverse-transform draw.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawLedger {
    physical: Vec<u64>,
    logical: Vec<u64>,
}

impl DrawLedger {
    pub fn new(arms: usize) -> Self {
        DrawLedger {
            physical: vec![0; arms],
            logical: vec![0; arms],
        }
    }

    pub fn record(&mut self, arm: usize, physical: u64, logical: u64) {
        self.physical[arm] += physical;
        self.logical[arm] += logical;
    }

    /// Record draws whose physical and logical counts coincide.
    pub fn record_exact(&mut self, arm: usize, draws: u64) {
        self.record(arm, draws, draws);
    }

    pub fn physical(&self) -> &[u64] {
        &self.physical
    }

    pub fn logical(&self) -> &[u64] {
        &self.logical
    }

    pub fn physical_total(&self) -> u64 {
        self.physical.iter().sum()
    }

    pub fn logical_total(&self) -> u64 {
        self.logical.iter().sum()
    }
}

/// Snapshot of an episode at the end of round `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub t: u64,
    pub regret: f64,
    pub pulls: Vec<u64>,
    pub draws_total: u64,
    pub draws_optimal: u64,
    pub draws_suboptimal: u64,
    pub physical_draws: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunMetrics {
    pub horizon: u64,
    pub checkpoints: Vec<Checkpoint>,
    pub pulls: Vec<u64>,
    /// Posterior draws per arm, split by accounting.
    pub draws: DrawLedger,
    /// Draws reported during the initial one-pull-per-arm sweep.
    pub init_draws: DrawLedger,
    /// Posterior samples counted by the sampling layer itself.
    pub sampler_draws: u64,
    pub regret: f64,
}

impl RunMetrics {
    pub fn final_checkpoint(&self) -> &Checkpoint {
        self.checkpoints
            .last()
            .expect("episodes always record round T")
    }
}

/// Roughly `points` geometrically spaced rounds in `1..=horizon`, always
/// ending with `horizon`.
pub fn geometric_checkpoints(horizon: u64, points: usize) -> Vec<u64> {
    let mut grid = Vec::with_capacity(points + 1);
    if horizon == 0 {
        return grid;
    }
    let points = points.max(1);
    let log_t = (horizon as f64).ln();
    for j in 0..points {
        let t = (log_t * j as f64 / (points - 1).max(1) as f64)
            .exp()
            .round() as u64;
        let t = t.clamp(1, horizon);
        if grid.last() != Some(&t) {
            grid.push(t);
        }
    }
    if grid.last() != Some(&horizon) {
        grid.push(horizon);
    }
    grid
}

struct Recorder<'a> {
    instance: &'a BanditInstance,
    grid: Vec<u64>,
    next: usize,
    out: Vec<Checkpoint>,
}

impl Recorder<'_> {
    fn observe(&mut self, t: u64, arms: &[ArmState], draws: &DrawLedger) {
        while self.next < self.grid.len() && self.grid[self.next] == t {
            let pulls: Vec<u64> = arms.iter().map(ArmState::pulls).collect();
            let regret = pulls
                .iter()
                .zip(self.instance.gaps())
                .map(|(&n, &g)| n as f64 * g)
                .sum();
            let (mut opt, mut sub) = (0, 0);
            for (i, &d) in draws.logical().iter().enumerate() {
                if self.instance.is_optimal(i) {
                    opt += d;
                } else {
                    sub += d;
                }
            }
            self.out.push(Checkpoint {
                t,
                regret,
                pulls,
                draws_total: opt + sub,
                draws_optimal: opt,
                draws_suboptimal: sub,
                physical_draws: draws.physical_total(),
            });
            self.next += 1;
        }
    }
}

/// Play `policy` on `instance` for `horizon` rounds.
///
/// Rounds `1..=K` pull each arm once in index order; afterwards the policy
/// chooses. Checkpoints outside `1..=horizon` are ignored and `horizon` is
/// always recorded.
pub fn run_episode(
    instance: &BanditInstance,
    policy: &mut dyn Policy,
    horizon: u64,
    rng: &RngStream,
    checkpoints: &[u64],
) -> Result<RunMetrics> {
    let k = instance.arms();
    if horizon < k as u64 {
        return Err(Error::Parameter(format!(
            "horizon {horizon} is shorter than the {k} initialization rounds"
        )));
    }
    let mut env_rng = rng.split(0);
    let mut policy_rng = rng.split(1);

    let mut grid: Vec<u64> = checkpoints
        .iter()
        .copied()
        .filter(|&t| (1..=horizon).contains(&t))
        .collect();
    grid.push(horizon);
    grid.sort_unstable();
    grid.dedup();
    let mut rec = Recorder {
        instance,
        grid,
        next: 0,
        out: Vec::new(),
    };

    policy.initialize(k, horizon)?;
    let mut arms = vec![ArmState::default(); k];
    let mut ledger = DrawLedger::new(k);

    for arm in 0..k {
        let reward = instance.model(arm).sample(&mut env_rng);
        arms[arm].record(reward);
        policy.update(arm, &arms, &mut policy_rng, &mut ledger);
        rec.observe(arm as u64 + 1, &arms, &ledger);
    }
    let init_draws = ledger.clone();

    for t in (k as u64 + 1)..=horizon {
        let arm = policy.select(t, &arms, &mut policy_rng, &mut ledger);
        let reward = instance.model(arm).sample(&mut env_rng);
        arms[arm].record(reward);
        policy.update(arm, &arms, &mut policy_rng, &mut ledger);
        rec.observe(t, &arms, &ledger);
    }

    let pulls: Vec<u64> = arms.iter().map(ArmState::pulls).collect();
    let regret = rec.out.last().map_or(0.0, |c| c.regret);
    Ok(RunMetrics {
        horizon,
        checkpoints: rec.out,
        pulls,
        draws: ledger,
        init_draws,
        sampler_draws: policy_rng.posterior_draws(),
        regret,
    })
}
