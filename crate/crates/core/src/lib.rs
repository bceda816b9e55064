//! Thompson sampling with bounded posterior-sampling budgets for stochastic
//! multi-armed bandits.
//!
//! The crate is organised in layers:
//!
//! * [`distributions`]: Gaussian, max-of-Gaussians, Beta and ExpTS samplers,
//!   normal quantiles and Bernoulli KL inversions.
//! * [`bandit`]: instances, per-arm state, draw accounting and the episode
//!   loop.
//! * [`policies`]: Vanilla TS, TS-MA-α, TS-TD-α, ε-TS, ExpTS+ and KL-UCB++
//!   behind one [`policies::Policy`] trait.
//! * [`verification`]: closed-form regret bounds and Monte Carlo checks of
//!   the concentration lemmas.
//! * [`harness`]: JSON experiment specs, parallel replications and CSV
//!   output.
//!
//! All randomness flows through [`rng::RngStream`], so every run is a pure
//! function of its seed.

pub mod bandit;
pub mod distributions;
pub mod error;
pub mod harness;
pub mod policies;
pub mod rng;
pub mod verification;

pub use bandit::{run_episode, ArmState, BanditInstance, Checkpoint, DrawLedger, RunMetrics};
pub use error::{Error, Result};
pub use harness::{run_experiment, ExperimentSpec};
pub use policies::{Policy, PolicyConfig, Prior};
pub use rng::RngStream;
