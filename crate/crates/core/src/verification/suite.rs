//! Self-checks run by `tsbudget verify`.

use rayon::prelude::*;

use super::bounds::{lemma1_threshold, theorem1_bound, theorem1_pull_bound};
use super::lemma1::{lemma1_estimator, Lemma1Query};
use super::stats::{ks_critical, ks_statistic};
use crate::bandit::{run_episode, BanditInstance};
use crate::distributions::{
    bernoulli_kl, kl_upper_inverse, normal_cdf, normal_quantile, sample_gaussian,
    sample_max_gaussian, sample_max_gaussian_naive, GaussianParams, MaxGaussianParams,
};
use crate::error::Result;
use crate::policies::{PolicyConfig, Prior};
use crate::rng::RngStream;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub ks_draws: usize,
    pub lemma_trials: usize,
    pub theorem1_reps: usize,
    pub theorem1_horizon: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 2024,
            ks_draws: 100_000,
            lemma_trials: 1_000_000,
            theorem1_reps: 100,
            theorem1_horizon: 10_000,
        }
    }
}

/// `|Φ(Φ⁻¹(p)) - p|` over `points` log-spaced probabilities in
/// `[1e-10, 1 - 1e-10]`, mirrored around ½.
pub fn quantile_roundtrip_error(points: usize) -> f64 {
    let half = points / 2;
    let (lo, hi) = (1e-10f64.ln(), 0.5f64.ln());
    (0..half)
        .flat_map(|j| {
            let p = (lo + (hi - lo) * j as f64 / (half - 1).max(1) as f64).exp();
            [p, 1.0 - p]
        })
        .map(|p| (normal_cdf(normal_quantile(p).expect("p in (0,1)")) - p).abs())
        .fold(0.0, f64::max)
}

/// Largest `|KL(p, a*) - c|` with `a* = kl_upper_inverse(p, c)` over a grid
/// of `p` and budgets `c` that stay below `KL(p, 1 - 1e-6)`.
pub fn kl_inversion_error() -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let p = i as f64 / 100.0;
        let cap = bernoulli_kl(p, 1.0 - 1e-6).expect("valid");
        for j in 1..=60 {
            let c = 1e-6 * 10f64.powf(j as f64 / 10.0);
            if c >= cap {
                break;
            }
            let a = kl_upper_inverse(p, c).expect("valid");
            worst = worst.max((bernoulli_kl(p, a).expect("valid") - c).abs());
        }
    }
    worst
}

fn check_quantile() -> CheckOutcome {
    let err = quantile_roundtrip_error(10_000);
    CheckOutcome::new(
        "quantile round trip",
        err <= 1e-9,
        format!("max error {err:.3e} (tol 1e-9)"),
    )
}

fn check_kl() -> CheckOutcome {
    let err = kl_inversion_error();
    let analytic = (1..=50)
        .map(|j| {
            let c = j as f64 * 0.2;
            (kl_upper_inverse(0.0, c).expect("valid") - (1.0 - (-c).exp())).abs()
        })
        .fold(0.0, f64::max);
    CheckOutcome::new(
        "KL upper inversion",
        err <= 1e-9 && analytic <= 1e-9,
        format!("grid error {err:.3e}, analytic error {analytic:.3e} (tol 1e-9)"),
    )
}

/// KS statistic and critical value comparing the inverse-transform maximum
/// with the explicit maximum of `count` draws.
pub fn max_gaussian_ks(count: u64, draws: usize, seed: u64) -> (f64, f64) {
    let base = GaussianParams::new(0.0, 1.0).expect("unit gaussian");
    let p = MaxGaussianParams::new(base, count).expect("count >= 1");
    let root = RngStream::new(seed).split(count);
    let mut fast_rng = root.split(0);
    let mut naive_rng = root.split(1);
    let fast: Vec<f64> = (0..draws)
        .map(|_| sample_max_gaussian(&p, &mut fast_rng))
        .collect();
    let naive: Vec<f64> = if count == 1 {
        (0..draws)
            .map(|_| sample_gaussian(&base, &mut naive_rng))
            .collect()
    } else {
        (0..draws)
            .map(|_| sample_max_gaussian_naive(&p, &mut naive_rng))
            .collect()
    };
    (ks_statistic(&fast, &naive), ks_critical(draws, draws, 0.01))
}

fn check_max_gaussian(opts: &SuiteOptions) -> Vec<CheckOutcome> {
    [1u64, 2, 10, 100]
        .par_iter()
        .map(|&count| {
            let (d, crit) = max_gaussian_ks(count, opts.ks_draws, opts.seed);
            CheckOutcome::new(
                &format!("max-of-{count} gaussian sampler"),
                d < crit,
                format!("KS {d:.5} vs critical {crit:.5}"),
            )
        })
        .collect()
}

fn check_lemma1(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>> {
    let horizon = 10_000;
    let delta = 0.1;
    let big = lemma1_threshold(delta, horizon)?.ceil() as u64;
    let mut out = Vec::new();
    for (k, &pulls) in [1u64, 5, 25, big].iter().enumerate() {
        let q = Lemma1Query {
            pulls,
            delta,
            horizon,
            best_mean: 0.9,
            trials: opts.lemma_trials,
        };
        let est = lemma1_estimator(&q, &RngStream::new(opts.seed).split(100 + k as u64))?;
        out.push(CheckOutcome::new(
            &format!("reciprocal probability, s = {pulls}"),
            est.within(3.0),
            format!(
                "estimate {:.5} ± {:.2e} (winsorized {:.5}) vs bound {:.4}",
                est.mean, est.std_error, est.winsorized_mean, est.bound
            ),
        ));
    }
    Ok(out)
}

/// Mean pulls of the suboptimal arm under Gaussian Vanilla TS on a
/// two-armed (0.9, 0.8) Bernoulli instance.
pub fn vanilla_suboptimal_pulls(horizon: u64, reps: usize, seed: u64) -> Result<f64> {
    let inst = BanditInstance::bernoulli(&[0.9, 0.8])?;
    let cfg = PolicyConfig::VanillaTs {
        prior: Prior::Gaussian,
    };
    let pulls: Result<Vec<f64>> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut policy = cfg.build(2)?;
            let rng = RngStream::for_replication(seed, 0, r);
            let m = run_episode(&inst, policy.as_mut(), horizon, &rng, &[])?;
            Ok(m.pulls[1] as f64)
        })
        .collect();
    let pulls = pulls?;
    Ok(pulls.iter().sum::<f64>() / pulls.len() as f64)
}

fn check_theorem1(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>> {
    let mean = vanilla_suboptimal_pulls(opts.theorem1_horizon, opts.theorem1_reps, opts.seed)?;
    let ceiling = theorem1_pull_bound(0.1, opts.theorem1_horizon)?;
    let mut prev = f64::INFINITY;
    let mut decreasing = true;
    let lo = std::f64::consts::E / (opts.theorem1_horizon as f64).sqrt();
    for j in 0..=200 {
        let d = lo + (1.0 - lo) * j as f64 / 200.0;
        let b = theorem1_bound(d, opts.theorem1_horizon)?;
        decreasing &= b < prev;
        prev = b;
    }
    Ok(vec![
        CheckOutcome::new(
            "vanilla TS pull ceiling",
            mean <= ceiling,
            format!("mean suboptimal pulls {mean:.1} vs ceiling {ceiling:.1}"),
        ),
        CheckOutcome::new(
            "regret bound decreasing in gap",
            decreasing,
            format!("checked 201 gaps in [{lo:.4}, 1]"),
        ),
    ])
}

/// Gaussian tail `P{Z > z}` against the anti-concentration lower bound
/// `z/(z²+1)·φ(z)` and the concentration upper bound `½e^{-z²/2}`.
fn check_gaussian_tails(opts: &SuiteOptions) -> Vec<CheckOutcome> {
    let draws = 1_000_000usize;
    let mut rng = RngStream::new(opts.seed).split(7);
    let p = GaussianParams::new(0.3, 4.0).expect("valid");
    let sample: Vec<f64> = (0..draws).map(|_| sample_gaussian(&p, &mut rng)).collect();
    [0.5, 1.0, 2.0]
        .iter()
        .map(|&z| {
            let cut = 0.3 + 2.0 * z;
            let frac = sample.iter().filter(|&&x| x > cut).count() as f64 / draws as f64;
            let se = (frac * (1.0 - frac) / draws as f64).sqrt();
            let lower =
                z / (z * z + 1.0) * (-z * z / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let upper = 0.5 * (-z * z / 2.0).exp();
            CheckOutcome::new(
                &format!("gaussian tail bounds at z = {z}"),
                frac >= lower - 3.0 * se && frac <= upper + 3.0 * se,
                format!("empirical {frac:.5} in [{lower:.5}, {upper:.5}]"),
            )
        })
        .collect()
}

/// Run every check; returns one outcome per check in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![check_quantile(), check_kl()];
    out.extend(check_max_gaussian(opts));
    out.extend(check_gaussian_tails(opts));
    out.extend(check_lemma1(opts)?);
    out.extend(check_theorem1(opts)?);
    Ok(out)
}
