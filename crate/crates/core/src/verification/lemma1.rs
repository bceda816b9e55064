//! Monte Carlo estimate of the expected reciprocal probability that the
//! optimal arm's posterior sample clears `μ₁ - Δ/2`.

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::bounds::lemma1_threshold;
use crate::distributions::normal_sf;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Smallest per-trial probability accepted before the estimate is abandoned.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

/// Fraction of the largest per-trial values winsorized in the diagnostic mean.
pub const WINSOR_FRACTION: f64 = 1e-4;

const CHUNKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Query {
    /// Pull count `s` of the optimal arm.
    pub pulls: u64,
    pub delta: f64,
    pub horizon: u64,
    pub best_mean: f64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Estimate {
    /// Raw Monte Carlo mean of `1/p - 1`.
    pub mean: f64,
    pub std_error: f64,
    /// Mean after clipping the top [`WINSOR_FRACTION`] of trials. Diagnostic only.
    pub winsorized_mean: f64,
    /// 29, or `180/(TΔ²)` once `pulls >= L_{1,i}`.
    pub bound: f64,
    pub threshold: f64,
    pub trials: usize,
}

impl Lemma1Estimate {
    /// Estimate within `k` standard errors of the applicable bound.
    pub fn within(&self, k: f64) -> bool {
        self.mean <= self.bound + k * self.std_error
    }
}

/// `1/P{θ > target} - 1` for `θ ~ N(mean, 1/s)`, given `sqrt(s)`.
fn reciprocal_excess(target: f64, mean: f64, root_s: f64) -> Result<f64> {
    let p = normal_sf((target - mean) * root_s);
    if p.is_nan() || p < PROBABILITY_FLOOR {
        return Err(Error::Numerical(format!(
            "P{{θ > {target}}} = {p:e} at empirical mean {mean} with s = {}; \
             the reciprocal is too heavy-tailed to estimate",
            (root_s * root_s).round()
        )));
    }
    Ok(1.0 / p - 1.0)
}

/// Estimate `E[1/P{θ > μ₁ - Δ/2 | μ̂}] - 1` for `θ ~ N(μ̂, 1/s)` with `μ̂` the
/// mean of `s` Bernoulli(μ₁) rewards.
///
/// Trials are split into fixed chunks, each on its own child stream, and
/// reduced in chunk order, so the result does not depend on thread count.
pub fn lemma1_estimator(q: &Lemma1Query, rng: &RngStream) -> Result<Lemma1Estimate> {
    if !(q.best_mean > 0.0 && q.best_mean < 1.0) {
        return Err(Error::Parameter(format!(
            "best mean must lie in (0,1), got {}",
            q.best_mean
        )));
    }
    if q.pulls == 0 || q.trials == 0 {
        return Err(Error::Parameter("pulls and trials must be >= 1".into()));
    }
    let threshold = lemma1_threshold(q.delta, q.horizon)?;
    let bound = if q.pulls as f64 >= threshold {
        180.0 / (q.horizon as f64 * q.delta * q.delta)
    } else {
        29.0
    };

    let binomial = Binomial::new(q.pulls, q.best_mean)
        .map_err(|e| Error::Parameter(format!("binomial: {e}")))?;
    let target = q.best_mean - q.delta / 2.0;
    let root_s = (q.pulls as f64).sqrt();
    let per_chunk = q.trials.div_ceil(CHUNKS);

    let chunks: Vec<Result<Vec<f64>>> = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let start = c * per_chunk;
            let end = ((c + 1) * per_chunk).min(q.trials);
            let mut stream = rng.split(c as u64);
            let mut out = Vec::with_capacity(end.saturating_sub(start));
            for _ in start..end {
                let mean = binomial.sample(&mut stream) as f64 / q.pulls as f64;
                out.push(reciprocal_excess(target, mean, root_s)?);
            }
            Ok(out)
        })
        .collect();
    let mut values = Vec::with_capacity(q.trials);
    for chunk in chunks {
        values.extend(chunk?);
    }

    let (mean, std_error) = super::stats::mean_se(&values);
    let mut sorted = values;
    sorted.sort_by(f64::total_cmp);
    let keep = ((1.0 - WINSOR_FRACTION) * sorted.len() as f64).ceil() as usize;
    let cap = sorted[keep.clamp(1, sorted.len()) - 1];
    let winsorized_mean = sorted.iter().map(|v| v.min(cap)).sum::<f64>() / sorted.len() as f64;

    Ok(Lemma1Estimate {
        mean,
        std_error,
        winsorized_mean,
        bound,
        threshold,
        trials: q.trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(pulls: u64, delta: f64, trials: usize) -> Lemma1Query {
        Lemma1Query {
            pulls,
            delta,
            horizon: 10_000,
            best_mean: 0.9,
            trials,
        }
    }

    #[test]
    fn certain_event_gives_zero() {
        let est = lemma1_estimator(&query(3, 1e6, 1000), &RngStream::new(1)).unwrap();
        assert_eq!(est.mean, 0.0);
    }

    #[test]
    fn single_pull_matches_exact_expectation() {
        // s = 1: μ̂ ∈ {0, 1}, so the expectation is a two-point sum.
        let exact = 0.9 * (1.0 / normal_sf(0.85 - 1.0) - 1.0) + 0.1 * (1.0 / normal_sf(0.85) - 1.0);
        let est = lemma1_estimator(&query(1, 0.1, 200_000), &RngStream::new(2)).unwrap();
        assert!((est.mean - exact).abs() <= 4.0 * est.std_error);
        assert!(est.within(3.0));
        assert_eq!(est.bound, 29.0);
    }

    #[test]
    fn deterministic_across_calls() {
        let a = lemma1_estimator(&query(5, 0.1, 10_000), &RngStream::new(3)).unwrap();
        let b = lemma1_estimator(&query(5, 0.1, 10_000), &RngStream::new(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn large_pull_regime_uses_tight_bound() {
        let est = lemma1_estimator(&query(25_000, 0.1, 1000), &RngStream::new(4)).unwrap();
        assert!(est.bound < 29.0);
        assert!(est.within(3.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut q = query(5, 0.1, 10);
        q.best_mean = 1.0;
        assert!(lemma1_estimator(&q, &RngStream::new(0)).is_err());
        assert!(lemma1_estimator(&query(0, 0.1, 10), &RngStream::new(0)).is_err());
    }

    #[test]
    fn underflow_is_reported() {
        assert!(matches!(
            reciprocal_excess(0.85, 0.0, 100.0),
            Err(Error::Numerical(_))
        ));
        assert!((reciprocal_excess(0.5, 0.5, 3.0).unwrap() - 1.0).abs() < 1e-15);
    }
}
