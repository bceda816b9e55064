//! Draw from each posterior sampler and compare the one-draw maximum of φ
//! Gaussians against the explicit construction.
//!
//!     cargo run --example samplers

use thompson_budget::distributions::{
    normal_quantile, sample_beta, sample_expts, sample_max_gaussian, sample_max_gaussian_naive,
    BetaParams, ExpTsParams, GaussianParams, MaxGaussianParams,
};
use thompson_budget::verification::stats::ks_statistic;
use thompson_budget::RngStream;

fn main() -> thompson_budget::Result<()> {
    let base = GaussianParams::new(0.8, 1.0 / 50.0)?;
    let n = 50_000;

    for count in [1, 10, 769] {
        let p = MaxGaussianParams::new(base, count)?;
        let mut fast_rng = RngStream::new(1);
        let mut slow_rng = RngStream::new(2);
        let fast: Vec<f64> = (0..n)
            .map(|_| sample_max_gaussian(&p, &mut fast_rng))
            .collect();
        let slow: Vec<f64> = (0..n)
            .map(|_| sample_max_gaussian_naive(&p, &mut slow_rng))
            .collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        println!(
            "max of {count:>3}: one-draw mean {:.4} ({} draws), explicit mean {:.4} ({} draws), KS {:.4}",
            mean(&fast),
            fast_rng.posterior_draws(),
            mean(&slow),
            slow_rng.posterior_draws(),
            ks_statistic(&fast, &slow)
        );
    }

    let mut rng = RngStream::new(3);
    let beta = BetaParams::posterior(0.7, 20)?;
    let expts = ExpTsParams::new(0.7, 19.0)?;
    let b: f64 = (0..n).map(|_| sample_beta(&beta, &mut rng)).sum::<f64>() / n as f64;
    let e: f64 = (0..n).map(|_| sample_expts(&expts, &mut rng)).sum::<f64>() / n as f64;
    println!("Beta({}, {}) mean {b:.4}", beta.a(), beta.b());
    println!(
        "ExpTS(anchor 0.7, strength 19) mean {e:.4}, median {:.4}",
        expts.quantile(0.5)
    );
    println!("z_0.999 = {:.12}", normal_quantile(0.999)?);
    Ok(())
}
