//! Ramsey interferometer and single-photon Mach–Zehnder simulation, with a
//! sinusoid fit for the resulting fringes.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::fisher::{cfi_bernoulli, FisherReport};
use crate::qcore::{apply_collective_rotation, evolve_multiplicative, HamiltonianSpec, StateVector};
use crate::states::MixedEnsemble;

/// Peak-to-peak amplitude below which a signal counts as flat.
pub const FLAT_TOL: f64 = 1e-9;

/// Default readout-phase count.
pub const DEFAULT_PHASE_POINTS: usize = 64;

/// `points` uniform phases over `[0, 4π)`.
pub fn default_phase_grid() -> Vec<f64> {
    uniform_phase_grid(DEFAULT_PHASE_POINTS, 4.0 * PI)
}

/// `points` uniform phases over `[0, max)`.
pub fn uniform_phase_grid(points: usize, max: f64) -> Vec<f64> {
    (0..points).map(|i| max * i as f64 / points as f64).collect()
}

/// Collective readout versus readout-pulse phase.
#[derive(Clone, Debug, PartialEq)]
pub struct FringeData {
    pub num_spins: usize,
    pub readout_phase: Vec<f64>,
    /// `⟨Σσz/2⟩`.
    pub expectation_sz: Vec<f64>,
    /// `⟨Πσz⟩`.
    pub expectation_parity: Vec<f64>,
    /// Per phase, probability of `m` spins in `|1⟩` for `m = 0..=N`
    /// (collective `S_z = N/2 − m`).
    pub outcome_distributions: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Sz,
    Parity,
}

/// Fitted `A·cos(2πφ/T + δ) + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FringeFit {
    /// `None` when the signal is flat.
    pub period: Option<f64>,
    pub contrast: f64,
    pub offset: f64,
    /// RMS of the fit residual.
    pub residual: f64,
}

/// Excitation-number distribution, with `⟨S_z⟩` and parity.
fn collective_statistics(state: &StateVector) -> (Vec<f64>, f64, f64) {
    let n = state.num_spins();
    let mut dist = vec![0.0; n + 1];
    for (k, a) in state.amplitudes().iter().enumerate() {
        dist[k.count_ones() as usize] += a.norm_sqr();
    }
    let sz = dist.iter().enumerate().map(|(m, p)| p * (n as f64 / 2.0 - m as f64)).sum();
    let parity = dist.iter().enumerate().map(|(m, p)| if m % 2 == 0 { *p } else { -p }).sum();
    (dist, sz, parity)
}

/// Free evolution under `θγΣσz/2` for `t`, a `π/2` readout pulse about the
/// axis at each grid phase, then collective z statistics. Mixtures are averaged
/// componentwise.
pub fn run_ramsey(initial: &MixedEnsemble, theta: f64, t: f64, gamma: f64, phase_grid: &[f64]) -> Result<FringeData> {
    if phase_grid.is_empty() {
        return Err(invalid("phase_grid", "at least one readout phase is required"));
    }
    let n = initial.num_spins();
    let h = HamiltonianSpec::collective_z(n, gamma)?;
    let evolved = initial
        .components()
        .iter()
        .map(|(w, s)| Ok((*w, evolve_multiplicative(s, &h, theta, t)?)))
        .collect::<Result<Vec<_>>>()?;
    let per_phase: Vec<(Vec<f64>, f64, f64)> = phase_grid
        .par_iter()
        .map(|&phi| {
            let mut dist = vec![0.0; n + 1];
            let (mut sz, mut parity) = (0.0, 0.0);
            for (w, s) in &evolved {
                let (d, z, p) = collective_statistics(&apply_collective_rotation(s, PI / 2.0, phi));
                dist.iter_mut().zip(d).for_each(|(a, b)| *a += w * b);
                sz += w * z;
                parity += w * p;
            }
            (dist, sz, parity)
        })
        .collect();
    let mut data = FringeData {
        num_spins: n,
        readout_phase: phase_grid.to_vec(),
        expectation_sz: Vec::with_capacity(phase_grid.len()),
        expectation_parity: Vec::with_capacity(phase_grid.len()),
        outcome_distributions: Vec::with_capacity(phase_grid.len()),
    };
    for (d, z, p) in per_phase {
        data.outcome_distributions.push(d);
        data.expectation_sz.push(z);
        data.expectation_parity.push(p);
    }
    Ok(data)
}

/// Best linear fit of `a cos ωφ + b sin ωφ + c` for a fixed `ω`; returns
/// `(a, b, c, rss)`.
fn linear_fit(x: &[f64], y: &[f64], omega: f64) -> (f64, f64, f64, f64) {
    let mut ata = Matrix3::<f64>::zeros();
    let mut aty = Vector3::<f64>::zeros();
    for (&xi, &yi) in x.iter().zip(y) {
        let row = Vector3::new((omega * xi).cos(), (omega * xi).sin(), 1.0);
        ata += row * row.transpose();
        aty += row * yi;
    }
    let coef = ata.lu().solve(&aty).unwrap_or_else(Vector3::zeros);
    let rss = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let m = coef[0] * (omega * xi).cos() + coef[1] * (omega * xi).sin() + coef[2];
            (yi - m).powi(2)
        })
        .sum();
    (coef[0], coef[1], coef[2], rss)
}

/// Period from the discrete Fourier peak, refined by least squares.
pub fn fit_fringe(data: &FringeData, channel: Channel) -> Result<FringeFit> {
    let y = match channel {
        Channel::Sz => &data.expectation_sz,
        Channel::Parity => &data.expectation_parity,
    };
    fit_signal(&data.readout_phase, y)
}

/// [`fit_fringe`] on raw samples.
pub fn fit_signal(x: &[f64], y: &[f64]) -> Result<FringeFit> {
    if x.len() != y.len() {
        return Err(crate::Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    let n = x.len();
    if n < 8 {
        return Err(invalid("phase_grid", format!("fringe fit needs >= 8 points, got {n}")));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("phase_grid", "phases must be strictly increasing"));
    }
    let mean = y.iter().sum::<f64>() / n as f64;
    let (lo, hi) = y.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if hi - lo < FLAT_TOL {
        let residual = (y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
        return Ok(FringeFit { period: None, contrast: 0.0, offset: mean, residual });
    }

    let spacing = (x[n - 1] - x[0]) / (n - 1) as f64;
    let span = x[n - 1] - x[0] + spacing;
    let bin = 2.0 * PI / span;
    let peak = (1..=(n - 1) / 2)
        .map(|k| {
            let w = bin * k as f64;
            let (re, im) = x.iter().zip(y).fold((0.0, 0.0), |(re, im), (&xi, &yi)| {
                (re + (yi - mean) * (w * xi).cos(), im - (yi - mean) * (w * xi).sin())
            });
            (k, re * re + im * im)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
        .unwrap_or(1);

    let rss = |w: f64| linear_fit(x, y, w).3;
    let lo_w = bin * (peak as f64 - 1.0).max(0.25);
    let hi_w = bin * (peak as f64 + 1.0);
    const SCAN: usize = 200;
    let step = (hi_w - lo_w) / SCAN as f64;
    let best = (0..=SCAN)
        .map(|i| lo_w + step * i as f64)
        .min_by(|a, b| rss(*a).total_cmp(&rss(*b)))
        .expect("non-empty scan");
    let omega = golden_min(rss, (best - step).max(lo_w), (best + step).min(hi_w), 1e-14);
    let (a, b, c, r) = linear_fit(x, y, omega);
    Ok(FringeFit {
        period: Some(2.0 * PI / omega),
        contrast: a.hypot(b),
        offset: c,
        residual: (r / n as f64).sqrt(),
    })
}

/// Golden-section minimization on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd { c } else { d }
}

/// Probability that a photon sent into rail 0 of a Mach–Zehnder interferometer
/// with arm phase difference `phi` leaves through the port that is dark at
/// `phi = 0`. Beam splitters are `π/2` rotations of the path qubit.
pub fn mach_zehnder_single_photon(phi: f64) -> f64 {
    let photon = StateVector::basis(1, 0).expect("one rail qubit");
    let split = apply_collective_rotation(&photon, PI / 2.0, 0.0);
    let shifted = evolve_multiplicative(&split, &HamiltonianSpec::single_z(1.0), phi, 1.0).expect("dims match");
    let out = apply_collective_rotation(&shifted, PI / 2.0, 0.0);
    out.amplitudes()[0].norm_sqr()
}

/// Dark-port probability, its slope, and the information it carries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarkFringeReport {
    pub p: f64,
    pub dp: f64,
    pub cfi: FisherReport,
    /// Central difference of the simulated interferometer.
    pub dp_numeric: f64,
}

/// `p = sin²(φ/2)`, `dp/dφ = sin(φ)/2`, and the Bernoulli information.
pub fn dark_fringe_report(phi: f64, dphi_step: f64) -> Result<DarkFringeReport> {
    if !(dphi_step > 0.0) {
        return Err(invalid("dphi_step", "must be > 0"));
    }
    let p = (phi / 2.0).sin().powi(2);
    let dp = phi.sin() / 2.0;
    let cfi = cfi_bernoulli(p, dp)?;
    let dp_numeric =
        (mach_zehnder_single_photon(phi + dphi_step) - mach_zehnder_single_photon(phi - dphi_step)) / (2.0 * dphi_step);
    Ok(DarkFringeReport { p, dp, cfi, dp_numeric })
}
