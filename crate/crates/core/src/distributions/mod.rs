//! Samplers and special functions used by the policies.
//!
//! Every sampler here that produces a data-dependent (posterior) sample bumps
//! the draw counter on the [`RngStream`] it consumes, once per sample.

mod kl;
mod normal;

pub use kl::{bernoulli_kl, kl_lower_inverse, kl_upper_inverse, BISECTION_CAP};
pub(crate) use kl::{kl_unchecked, lower_unchecked, upper_unchecked};
pub use normal::{normal_cdf, normal_pdf, normal_quantile, normal_quantile_upper, normal_sf};

use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Mean and variance of a Gaussian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianParams {
    mean: f64,
    variance: f64,
}

impl GaussianParams {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Parameter(format!(
                "gaussian mean must be finite, got {mean}"
            )));
        }
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::Parameter(format!(
                "gaussian variance must be positive and finite, got {variance}"
            )));
        }
        Ok(GaussianParams { mean, variance })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Law of the maximum of `count` i.i.d. draws from `base`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxGaussianParams {
    base: GaussianParams,
    count: u64,
}

impl MaxGaussianParams {
    pub fn new(base: GaussianParams, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::Parameter(
                "max-of-gaussians count must be >= 1".into(),
            ));
        }
        Ok(MaxGaussianParams { base, count })
    }

    pub fn base(&self) -> GaussianParams {
        self.base
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaParams {
    a: f64,
    b: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Parameter(format!(
                "beta parameters must be positive, got ({a}, {b})"
            )));
        }
        Ok(BetaParams { a, b })
    }

    /// Posterior used by Beta-prior Thompson Sampling after `pulls`
    /// observations with empirical mean `mean`.
    pub fn posterior(mean: f64, pulls: u64) -> Result<Self> {
        let n = pulls as f64;
        BetaParams::new(mean * n + 1.0, (1.0 - mean) * n + 1.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Parameters of the two-sided KL-shaped law used by ExpTS+.
///
/// CDF: `1 - ½exp(-s·KL(a, x))` for `x >= a`, `½exp(-s·KL(a, x))` for `x <= a`,
/// with anchor `a` and strength `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpTsParams {
    anchor: f64,
    strength: f64,
}

impl ExpTsParams {
    pub fn new(anchor: f64, strength: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&anchor) {
            return Err(Error::Parameter(format!(
                "ExpTS anchor must lie in [0,1], got {anchor}"
            )));
        }
        if !(strength >= 0.0 && strength.is_finite()) {
            return Err(Error::Parameter(format!(
                "ExpTS strength must be >= 0, got {strength}"
            )));
        }
        Ok(ExpTsParams { anchor, strength })
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    /// Analytic CDF.
    pub fn cdf(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return 1.0;
        }
        if x < 0.0 {
            return 0.0;
        }
        if self.strength == 0.0 {
            // Step of ½ at each endpoint.
            return 0.5;
        }
        let tail = 0.5 * (-self.strength * kl_unchecked(self.anchor, x)).exp();
        if x >= self.anchor {
            1.0 - tail
        } else {
            tail
        }
    }

    /// Inverse CDF at `u` in (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        let a = self.anchor;
        if self.strength == 0.0 {
            return if u < 0.5 { 0.0 } else { 1.0 };
        }
        if u == 0.5 {
            a
        } else if u > 0.5 {
            // ½exp(-s·KL) = 1 - u
            let budget = (0.5 / (1.0 - u)).ln() / self.strength;
            upper_unchecked(a, budget)
        } else {
            // ½exp(-s·KL) = u
            let budget = (0.5 / u).ln() / self.strength;
            lower_unchecked(a, budget)
        }
    }
}

/// One draw from `N(mean, variance)`.
pub fn sample_gaussian(p: &GaussianParams, rng: &mut RngStream) -> f64 {
    rng.count_draws(1);
    let z: f64 = rng.sample(StandardNormal);
    p.mean + p.std_dev() * z
}

/// Standard normal quantile of `u^(1/count)`, computed without cancellation
/// when that power sits close to 1.
fn max_normal_from_uniform(u: f64, count: u64) -> f64 {
    if count == 1 {
        return normal::quantile_unchecked(u);
    }
    let log_v = u.ln() / count as f64;
    let v = log_v.exp();
    if v > 0.5 {
        // 1 - v computed directly, then the upper-tail quantile.
        let w = -log_v.exp_m1();
        -normal::quantile_unchecked(w)
    } else {
        normal::quantile_unchecked(v)
    }
}

/// One draw distributed as the maximum of `count` i.i.d. Gaussians, by
/// inverse transform: `mean + sd·Φ⁻¹(u^(1/count))`. Counts as a single
/// physical draw.
pub fn sample_max_gaussian(p: &MaxGaussianParams, rng: &mut RngStream) -> f64 {
    rng.count_draws(1);
    let u = rng.open01();
    p.base.mean + p.base.std_dev() * max_normal_from_uniform(u, p.count)
}

/// Maximum of `count` explicit Gaussian draws. Counts `count` draws.
pub fn sample_max_gaussian_naive(p: &MaxGaussianParams, rng: &mut RngStream) -> f64 {
    (0..p.count)
        .map(|_| sample_gaussian(&p.base, rng))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn sample_beta(p: &BetaParams, rng: &mut RngStream) -> f64 {
    rng.count_draws(1);
    // Parameters were validated on construction.
    let beta = Beta::new(p.a, p.b).expect("validated beta parameters");
    beta.sample(rng)
}

pub fn sample_expts(p: &ExpTsParams, rng: &mut RngStream) -> f64 {
    rng.count_draws(1);
    let u = rng.open01();
    p.quantile(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(GaussianParams::new(0.0, 0.0).is_err());
        assert!(GaussianParams::new(0.0, -1.0).is_err());
        assert!(GaussianParams::new(f64::NAN, 1.0).is_err());
        assert!(GaussianParams::new(0.0, f64::INFINITY).is_err());
        let g = GaussianParams::new(0.0, 1.0).unwrap();
        assert!(MaxGaussianParams::new(g, 0).is_err());
        assert!(BetaParams::new(0.0, 1.0).is_err());
        assert!(BetaParams::new(1.0, -2.0).is_err());
        assert!(ExpTsParams::new(1.2, 1.0).is_err());
        assert!(ExpTsParams::new(0.5, -1.0).is_err());
    }

    #[test]
    fn gaussian_replays_with_seed() {
        let p = GaussianParams::new(0.0, 1.0).unwrap();
        let mut a = RngStream::new(5);
        let mut b = RngStream::new(5);
        for _ in 0..50 {
            assert_eq!(sample_gaussian(&p, &mut a), sample_gaussian(&p, &mut b));
        }
    }

    #[test]
    fn gaussian_mean() {
        let p = GaussianParams::new(0.9, 0.01).unwrap();
        let mut rng = RngStream::new(11);
        let n = 1_000_000;
        let mean = (0..n).map(|_| sample_gaussian(&p, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 0.9).abs() <= 3.0 * 0.1 / 1e3);
    }

    #[test]
    fn gaussian_upper_tail_fraction() {
        let p = GaussianParams::new(0.0, 1.0).unwrap();
        let mut rng = RngStream::new(12);
        let n = 100_000;
        let above = (0..n)
            .filter(|_| sample_gaussian(&p, &mut rng) > 1.0)
            .count();
        let expected = 1.0 - normal_cdf(1.0);
        assert!((expected - 0.158_655_253_931_457).abs() < 1e-12);
        assert!((above as f64 / n as f64 - expected).abs() <= 0.005);
    }

    #[test]
    fn max_of_one_matches_plain_quantile() {
        for &u in &[1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
            assert_eq!(max_normal_from_uniform(u, 1), normal_quantile(u).unwrap());
        }
    }

    #[test]
    fn max_transform_is_accurate_for_huge_counts() {
        // P(max <= z) = Φ(z)^count; check in log space.
        let count = 100_000u64;
        for &u in &[1e-6, 0.01, 0.5, 0.99, 1.0 - 1e-12] {
            let z = max_normal_from_uniform(u, count);
            let log_cdf = count as f64 * (-normal_sf(z)).ln_1p();
            assert!(
                (log_cdf - u.ln()).abs() <= 1e-9 * u.ln().abs().max(1.0),
                "u={u}"
            );
        }
    }

    #[test]
    fn beta_means() {
        let mut rng = RngStream::new(13);
        for &(a, b) in &[(1.0, 1.0), (2.0, 1.0), (91.0, 11.0)] {
            let p = BetaParams::new(a, b).unwrap();
            let n = 100_000;
            let mean = (0..n).map(|_| sample_beta(&p, &mut rng)).sum::<f64>() / n as f64;
            assert!(
                (mean - a / (a + b)).abs() <= 0.005,
                "Beta({a},{b}) mean {mean}"
            );
        }
    }

    #[test]
    fn beta_posterior_arithmetic() {
        let p = BetaParams::posterior(1.0, 1).unwrap();
        assert_eq!((p.a(), p.b()), (2.0, 1.0));
    }

    #[test]
    fn expts_median_is_anchor() {
        let p = ExpTsParams::new(0.3, 4.0).unwrap();
        assert_eq!(p.quantile(0.5), 0.3);
        assert_eq!(p.cdf(0.3), 0.5);
    }

    #[test]
    fn expts_upper_branch_inversion() {
        let p = ExpTsParams::new(0.9, 9.0).unwrap();
        let x = p.quantile(0.9);
        assert!(x > 0.9);
        let tail = 0.5 * (-9.0 * bernoulli_kl(0.9, x).unwrap()).exp();
        assert!((tail - 0.1).abs() <= 1e-9);
    }

    #[test]
    fn expts_zero_strength_is_endpoint_coin() {
        let p = ExpTsParams::new(0.4, 0.0).unwrap();
        assert_eq!(p.quantile(0.2), 0.0);
        assert_eq!(p.quantile(0.7), 1.0);
        let mut rng = RngStream::new(3);
        let n = 10_000;
        let ones = (0..n).filter(|_| sample_expts(&p, &mut rng) == 1.0).count();
        assert!((ones as f64 / n as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn samplers_count_draws() {
        let mut rng = RngStream::new(1);
        let g = GaussianParams::new(0.0, 1.0).unwrap();
        let m = MaxGaussianParams::new(g, 7).unwrap();
        sample_gaussian(&g, &mut rng);
        sample_max_gaussian(&m, &mut rng);
        sample_max_gaussian_naive(&m, &mut rng);
        sample_beta(&BetaParams::new(2.0, 3.0).unwrap(), &mut rng);
        sample_expts(&ExpTsParams::new(0.5, 3.0).unwrap(), &mut rng);
        rng.coin(0.5);
        assert_eq!(rng.posterior_draws(), 1 + 1 + 7 + 1 + 1);
    }
}
