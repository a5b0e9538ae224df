#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use qmetro_core::qcore::{HamiltonianSpec, StateVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(rng: &mut impl Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn random_state(rng: &mut impl Rng, num_spins: usize) -> StateVector {
    StateVector::normalized(random_amplitudes(rng, 1 << num_spins)).unwrap()
}

pub fn random_hermitian_matrix(rng: &mut impl Rng, dim: usize, scale: f64) -> DMatrix<C64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * C64::new(scale / 2.0, 0.0)
}

pub fn random_hamiltonian(rng: &mut impl Rng, num_spins: usize, scale: f64) -> HamiltonianSpec {
    HamiltonianSpec::from_matrix(random_hermitian_matrix(rng, 1 << num_spins, scale), scale, "random").unwrap()
}

/// `exp(a)` by scaling, a 30-term Taylor series, and repeated squaring.
pub fn expm_series(a: &DMatrix<C64>) -> DMatrix<C64> {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let scaled = a * C64::new(1.0 / 2f64.powi(squarings), 0.0);
    let n = a.nrows();
    let mut result = DMatrix::<C64>::identity(n, n);
    let mut term = DMatrix::<C64>::identity(n, n);
    for k in 1..30 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

pub fn apply(m: &DMatrix<C64>, v: &[C64]) -> Vec<C64> {
    (m * nalgebra::DVector::from_column_slice(v)).iter().copied().collect()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Pure-state QFI written out for a diagonal generator with levels `energies`:
/// `ψ_k = a_k e^{−iθtE_k}`, `dψ_k = −itE_k ψ_k`, then `4[⟨dψ|dψ⟩ − |⟨ψ|dψ⟩|²]`.
pub fn bcm_diagonal(amps: &[C64], energies: &[f64], theta: f64, t: f64) -> f64 {
    let psi: Vec<C64> = amps.iter().zip(energies).map(|(a, e)| a * C64::from_polar(1.0, -theta * t * e)).collect();
    let dpsi: Vec<C64> = psi.iter().zip(energies).map(|(p, e)| p * C64::new(0.0, -t * e)).collect();
    let dd: f64 = dpsi.iter().map(|z| z.norm_sqr()).sum();
    let ov: C64 = psi.iter().zip(&dpsi).map(|(p, d)| p.conj() * d).sum();
    4.0 * (dd - ov.norm_sqr())
}

/// Levels of `γΣσz/2` on `n` spins in basis order.
pub fn collective_levels(n: usize, gamma: f64) -> Vec<f64> {
    (0..1usize << n).map(|k| gamma * (n as f64 / 2.0 - k.count_ones() as f64)).collect()
}
