#![allow(dead_code)]

use channel_spin::channel_state::{ChannelConfig, PolarizationVector};
use channel_spin::spin_algebra::{c64, CMatrix, Vec3};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut impl Rng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    Vec3::new(r * phi.cos(), r * phi.sin(), z)
}

pub fn polarization(rng: &mut impl Rng) -> PolarizationVector {
    let mag: f64 = rng.gen_range(0.0..=1.0);
    PolarizationVector::from_vec3(unit_vector(rng) * mag).unwrap()
}

pub fn config(rng: &mut impl Rng) -> ChannelConfig {
    ChannelConfig::new(polarization(rng), polarization(rng))
}

pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    c64(r * u2.cos(), r * u2.sin())
}

pub fn random_state(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len).map(|_| complex_gaussian(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let a: Vec<Complex64> = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    CMatrix::from_fn(dim, |i, j| (a[i * dim + j] + a[j * dim + i].conj()) * 0.5).unwrap()
}

/// `n` evenly spaced values over `[lo, hi]`, endpoints exact.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}
