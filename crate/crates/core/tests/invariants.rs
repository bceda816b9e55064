use proptest::prelude::*;

use thompson_budget::policies::{PolicyConfig, Prior, TsMaMode};
use thompson_budget::{run_episode, BanditInstance, RngStream, RunMetrics};

fn policy_for(choice: usize, arms: usize, alpha: f64) -> PolicyConfig {
    let eps = (1.0 / arms as f64).max(0.3);
    match choice % 9 {
        0 => PolicyConfig::VanillaTs {
            prior: Prior::Gaussian,
        },
        1 => PolicyConfig::VanillaTs { prior: Prior::Beta },
        2 => PolicyConfig::TsMa {
            alpha,
            mode: TsMaMode::Efficient,
        },
        3 => PolicyConfig::TsMa {
            alpha,
            mode: TsMaMode::Naive,
        },
        4 => PolicyConfig::TsTd { alpha },
        5 => PolicyConfig::EpsilonTs {
            epsilon: eps,
            prior: Prior::Gaussian,
        },
        6 => PolicyConfig::EpsilonTs {
            epsilon: eps,
            prior: Prior::Beta,
        },
        7 => PolicyConfig::ExptsPlus,
        _ => PolicyConfig::KlUcbPp,
    }
}

fn episode(
    means: &[f64],
    cfg: &PolicyConfig,
    horizon: u64,
    seed: u64,
) -> (BanditInstance, RunMetrics) {
    let inst = BanditInstance::bernoulli(means).unwrap();
    let mut policy = cfg.build(inst.arms()).unwrap();
    let grid: Vec<u64> = (1..=horizon).step_by(7).collect();
    let m = run_episode(
        &inst,
        policy.as_mut(),
        horizon,
        &RngStream::new(seed),
        &grid,
    )
    .unwrap();
    (inst, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn episode_accounting_holds(
        means in prop::collection::vec(0.05f64..0.95, 1..6),
        choice in 0usize..9,
        alpha in prop::sample::select(vec![0.0, 0.5, 1.0]),
        extra in 0u64..300,
        seed in any::<u64>(),
    ) {
        let cfg = policy_for(choice, means.len(), alpha);
        let horizon = means.len() as u64 + extra;
        let (inst, m) = episode(&means, &cfg, horizon, seed);

        prop_assert_eq!(m.final_checkpoint().t, horizon);
        prop_assert_eq!(m.pulls.iter().sum::<u64>(), horizon);
        let mut prev = None;
        for c in &m.checkpoints {
            prop_assert_eq!(c.pulls.iter().sum::<u64>(), c.t);
            let regret: f64 = c.pulls.iter().zip(inst.gaps()).map(|(&n, &g)| n as f64 * g).sum();
            prop_assert!((c.regret - regret).abs() <= 1e-9 * (1.0 + regret));
            prop_assert_eq!(c.draws_total, c.draws_optimal + c.draws_suboptimal);
            if let Some((t, d)) = prev {
                prop_assert!(c.t > t);
                prop_assert!(c.draws_total >= d);
            }
            prev = Some((c.t, c.draws_total));
        }
        for (l, p) in m.draws.logical().iter().zip(m.draws.physical()) {
            prop_assert!(l >= p);
        }
        // The sampling layer's own counter agrees with what policies report.
        prop_assert_eq!(m.sampler_draws, m.draws.physical_total());
    }

    #[test]
    fn episodes_are_deterministic(
        means in prop::collection::vec(0.05f64..0.95, 2..5),
        choice in 0usize..9,
        seed in any::<u64>(),
    ) {
        let cfg = policy_for(choice, means.len(), 0.8);
        let (_, a) = episode(&means, &cfg, 120, seed);
        let (_, b) = episode(&means, &cfg, 120, seed);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn vanilla_draws_every_arm_every_decision_round() {
    let (_, m) = episode(
        &[0.3, 0.6, 0.5],
        &PolicyConfig::VanillaTs {
            prior: Prior::Gaussian,
        },
        500,
        1,
    );
    assert_eq!(m.draws.logical_total(), 3 * (500 - 3));
    assert_eq!(m.init_draws.logical_total(), 0);
}

#[test]
fn ts_ma_logical_draws_are_budget_per_pull() {
    let cfg = PolicyConfig::TsMa {
        alpha: 1.0,
        mode: TsMaMode::Efficient,
    };
    let budget = thompson_budget::policies::sample_budget(400, 1.0).unwrap();
    let (_, m) = episode(&[0.3, 0.6], &cfg, 400, 2);
    assert_eq!(m.draws.logical_total(), 400 * budget);
    assert_eq!(m.draws.physical_total(), 400);
}

#[test]
fn kl_ucb_never_samples() {
    let (_, m) = episode(&[0.3, 0.6, 0.9], &PolicyConfig::KlUcbPp, 1000, 3);
    assert_eq!(m.sampler_draws, 0);
    assert_eq!(m.final_checkpoint().draws_total, 0);
}
