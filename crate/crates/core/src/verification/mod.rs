//! Theory-side oracles: closed-form bounds, pull thresholds, the
//! reciprocal-probability estimator and the `verify` self-checks.

mod bounds;
mod lemma1;
pub mod stats;
mod suite;

pub use bounds::{
    leading_coefficient_ratio, lemma1_threshold, prior_art_bound, theorem1_bound,
    theorem1_pull_bound, ts_ma_pull_ceiling, ts_ma_pull_threshold, ts_td_pull_ceiling,
    ts_td_pull_threshold, ArmBound, BoundKind, BoundReport, PriorArtBound, TS_TD_SLACK,
};
pub use lemma1::{
    lemma1_estimator, Lemma1Estimate, Lemma1Query, PROBABILITY_FLOOR, WINSOR_FRACTION,
};
pub use suite::{
    kl_inversion_error, max_gaussian_ks, quantile_roundtrip_error, run_suite,
    vanilla_suboptimal_pulls, CheckOutcome, SuiteOptions,
};
