//! Closed-form regret bounds and a Monte Carlo estimate of the expected
//! reciprocal tail probability for the optimal arm.
//!
//!     cargo run --example regret_bounds

use thompson_budget::verification::{
    leading_coefficient_ratio, lemma1_estimator, lemma1_threshold, prior_art_bound, BoundKind,
    BoundReport, Lemma1Query, TS_TD_SLACK,
};
use thompson_budget::{BanditInstance, RngStream};

fn main() -> thompson_budget::Result<()> {
    let instance = BanditInstance::bernoulli(&[0.9, 0.8, 0.7, 0.5])?;
    let horizon = 100_000;
    for kind in [
        BoundKind::VanillaTs,
        BoundKind::TsMa { alpha: 0.8 },
        BoundKind::TsTd {
            alpha: 0.8,
            slack: TS_TD_SLACK,
        },
    ] {
        let report = BoundReport::for_instance(kind, &instance, horizon)?;
        println!("{kind:?}: total {:.1}", report.total);
        print!("{}", report.to_csv());
    }

    let prior = prior_art_bound(0.1, horizon)?;
    println!(
        "\nolder leading term at Δ=0.1: exp({:.2}) ≈ {:.3e}",
        prior.ln_value, prior.value
    );
    println!(
        "leading-constant ratio: {:.3e}",
        leading_coefficient_ratio()
    );

    let (delta, t) = (0.1, 10_000);
    let big = lemma1_threshold(delta, t)?.ceil() as u64;
    for pulls in [1, 10, 100, big] {
        let q = Lemma1Query {
            pulls,
            delta,
            horizon: t,
            best_mean: 0.9,
            trials: 200_000,
        };
        let e = lemma1_estimator(&q, &RngStream::new(pulls))?;
        println!(
            "s={pulls:>6}: E[1/p - 1] ≈ {:.5} ± {:.1e} (bound {})",
            e.mean, e.std_error, e.bound
        );
    }
    Ok(())
}
