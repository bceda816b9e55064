//! Seedable, splittable random streams.
//!
//! A stream is a ChaCha8 keystream: the key is derived from a base seed and the
//! stream selector from the split path, so every `(seed, path)` pair addresses
//! an independent, reproducible sequence regardless of the order in which
//! streams are created or consumed.
//!
//! Each stream also carries a counter of posterior draws. The samplers in
//! [`crate::distributions`] bump it once per data-dependent sample, which gives
//! the policies' self-reported draw ledger an independent cross-check.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from(seed: u64, path: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut state = mix64(seed) ^ path.rotate_left(17);
    for chunk in key.chunks_exact_mut(8) {
        state = mix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    key
}

/// Deterministic random stream with a posterior-draw counter.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    path: u64,
    inner: ChaCha8Rng,
    posterior_draws: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::at(seed, 0)
    }

    fn at(seed: u64, path: u64) -> Self {
        let mut inner = ChaCha8Rng::from_seed(key_from(seed, path));
        inner.set_stream(path);
        RngStream {
            seed,
            path,
            inner,
            posterior_draws: 0,
        }
    }

    /// Child stream addressed by `index`. Independent of how much of `self`
    /// has been consumed.
    pub fn split(&self, index: u64) -> Self {
        let path = mix64(self.path ^ mix64(index.wrapping_add(0xA076_1D64_78BD_642F)));
        Self::at(self.seed, path)
    }

    /// Stream for one replication of one policy in an experiment.
    pub fn for_replication(seed: u64, policy: usize, replication: usize) -> Self {
        RngStream::new(seed)
            .split(policy as u64)
            .split(replication as u64)
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn open01(&mut self) -> f64 {
        loop {
            let u = (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Bernoulli coin.
    pub fn coin(&mut self, p: f64) -> bool {
        self.open01() < p
    }

    /// Number of posterior samples produced from this stream so far.
    pub fn posterior_draws(&self) -> u64 {
        self.posterior_draws
    }

    pub(crate) fn count_draws(&mut self, n: u64) {
        self.posterior_draws += n;
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
