//! Seeded randomness. Every random object in the crate is drawn from a
//! ChaCha8 stream keyed by an explicit `u64` seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::signal::{Signal, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Circular complex Gaussian entries with unit variance per component.
pub fn complex_gaussian(rng: &mut SeededRng, len: usize) -> Vec<C64> {
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect()
}

/// A complex Gaussian signal of length `len >= 2`.
pub fn gaussian_signal(rng: &mut SeededRng, len: usize) -> Signal {
    Signal::new(complex_gaussian(rng, len)).expect("len >= 2")
}

pub fn uniform(rng: &mut SeededRng) -> f64 {
    rand::Rng::random::<f64>(rng)
}
