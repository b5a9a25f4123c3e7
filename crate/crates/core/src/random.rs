//! Seeded random instances for the randomized checks.
//!
//! Every trial gets its own generator, derived from `(seed, trial, tag)` by
//! splitmix64 mixing, so trials can run in any order or in parallel and a
//! single failing trial can be replayed from its reproducer line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{Complex, ComplexMatrix};
use crate::poly::MonicPolynomial;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit tag for a check name (FNV-1a).
pub fn name_tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn trial_seed(seed: u64, trial: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ tag)
}

pub fn trial_rng(seed: u64, trial: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, trial, tag))
}

/// Complex standard normal: real and imaginary parts are independent
/// `N(0, 1/2)`, so `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("positive dimensions and finite samples")
}

/// `G* G` for a square Gaussian `G`.
pub fn psd_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    gaussian_matrix(rng, n, n).gram_right()
}

pub fn gaussian_monic<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> MonicPolynomial {
    MonicPolynomial::new((0..degree).map(|_| complex_gaussian(rng)).collect())
        .expect("positive degree and finite samples")
}
