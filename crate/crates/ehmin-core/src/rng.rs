//! Seed-derived random streams shared by the GA engine and state sampling.
//!
//! Every consumer gets its own ChaCha stream derived from (seed, stream id),
//! so results never depend on evaluation order or worker scheduling.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw from [0, 1) with 53 bits of precision.
pub(crate) fn uniform_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw from [lo, hi).
pub(crate) fn uniform_range<R: RngCore>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform_f64(rng)
}

/// Uniform draw from 0..n via fixed-point multiply.
pub(crate) fn uniform_usize<R: RngCore>(rng: &mut R, n: usize) -> usize {
    debug_assert!(n > 0);
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// One pair of independent standard normals (Box-Muller).
pub(crate) fn normal_pair<R: RngCore>(rng: &mut R) -> (f64, f64) {
    let u1 = loop {
        let u = uniform_f64(rng);
        if u > 0.0 {
            break u;
        }
    };
    let u2 = uniform_f64(rng);
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let theta = 2.0 * core::f64::consts::PI * u2;
    (r * libm::cos(theta), r * libm::sin(theta))
}
