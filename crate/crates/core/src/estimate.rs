//! Shot sampling from Born statistics, maximum-likelihood phase estimation and
//! Monte-Carlo comparison with the Cramér–Rao bound.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::fisher::{cfi_projective, EvolutionFamily, MeasurementBasis, PriorDistribution};
use crate::qcore::{StateVector, MAX_DENSE_DIM};
use crate::ramsey::golden_min;

/// Default MLE search interval for Bernoulli phase models.
pub const DEFAULT_INTERVAL: (f64, f64) = (1e-6, PI - 1e-6);

/// Coarse-grid size before golden-section refinement.
pub const MLE_GRID: usize = 256;

/// Generator for one stream of a seeded run. ChaCha is counter-based, so
/// stream `k` is independent of how many draws other streams made.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Recorded measurement results (outcome indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotDataset {
    pub outcomes: Vec<usize>,
    pub shots: usize,
    pub seed: u64,
    pub model_tag: String,
    pub num_outcomes: usize,
}

impl ShotDataset {
    /// Wrap literal data, e.g. a published record of outcomes.
    pub fn from_outcomes(outcomes: Vec<usize>, num_outcomes: usize, model_tag: impl Into<String>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(invalid("outcomes", "dataset needs at least one shot"));
        }
        if let Some(o) = outcomes.iter().find(|&&o| o >= num_outcomes) {
            return Err(invalid("outcomes", format!("outcome {o} outside 0..{num_outcomes}")));
        }
        Ok(Self { shots: outcomes.len(), outcomes, seed: 0, model_tag: model_tag.into(), num_outcomes })
    }

    pub fn counts(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.num_outcomes];
        for &o in &self.outcomes {
            c[o] += 1;
        }
        c
    }
}

fn draw(rng: &mut ChaCha20Rng, cdf: &[f64]) -> usize {
    let u: f64 = rng.gen();
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs.iter().map(|p| {
        acc += p;
        acc
    }).collect()
}

/// `shots` i.i.d. outcomes of measuring `state` in `basis`, stream 0.
pub fn sample_outcomes(state: &StateVector, basis: &MeasurementBasis, shots: usize, seed: u64) -> Result<ShotDataset> {
    sample_outcomes_stream(state, basis, shots, seed, 0)
}

pub fn sample_outcomes_stream(
    state: &StateVector,
    basis: &MeasurementBasis,
    shots: usize,
    seed: u64,
    stream: u64,
) -> Result<ShotDataset> {
    if shots < 1 {
        return Err(invalid("shots", "must be at least 1"));
    }
    let cdf = cumulative(&basis.probabilities(state)?);
    let mut rng = stream_rng(seed, stream);
    let outcomes = (0..shots).map(|_| draw(&mut rng, &cdf)).collect();
    Ok(ShotDataset { outcomes, shots, seed, model_tag: format!("born:{}-outcome basis", basis.dim()), num_outcomes: basis.dim() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DatasetStats {
    pub mean: f64,
    /// Population variance (divides by the shot count).
    pub variance: f64,
}

/// Mean and population variance, computed from exact integer moments.
pub fn dataset_stats(data: &ShotDataset) -> Result<DatasetStats> {
    let n = data.outcomes.len() as u128;
    if n == 0 {
        return Err(invalid("shots", "dataset is empty"));
    }
    let s: u128 = data.outcomes.iter().map(|&o| o as u128).sum();
    let q: u128 = data.outcomes.iter().map(|&o| (o as u128) * (o as u128)).sum();
    Ok(DatasetStats { mean: s as f64 / n as f64, variance: (n * q - s * s) as f64 / (n * n) as f64 })
}

fn log_likelihood(counts: &[u64], probs: &[f64]) -> f64 {
    counts
        .iter()
        .zip(probs)
        .filter(|(c, _)| **c > 0)
        .map(|(&c, &p)| if p > 0.0 { c as f64 * p.ln() } else { f64::NEG_INFINITY })
        .sum()
}

/// Reusable likelihood maximizer for a θ ↦ outcome-distribution model.
struct MleProblem<F> {
    model: F,
    interval: (f64, f64),
    grid: Vec<f64>,
    grid_probs: Vec<Vec<f64>>,
}

impl<F: Fn(f64) -> Vec<f64>> MleProblem<F> {
    fn new(model: F, interval: (f64, f64)) -> Result<Self> {
        let (a, b) = interval;
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(invalid("search_interval", format!("need finite a < b, got ({a}, {b})")));
        }
        let grid: Vec<f64> = (0..MLE_GRID).map(|i| a + (b - a) * i as f64 / (MLE_GRID - 1) as f64).collect();
        let grid_probs = grid.iter().map(|&g| model(g)).collect();
        Ok(Self { model, interval, grid, grid_probs })
    }

    fn solve(&self, counts: &[u64]) -> Result<f64> {
        let (best_i, best_ll) = self
            .grid_probs
            .iter()
            .map(|p| log_likelihood(counts, p))
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        if best_ll == f64::NEG_INFINITY {
            return Err(Error::ImpossibleData);
        }
        let lo = self.grid[best_i.saturating_sub(1)];
        let hi = self.grid[(best_i + 1).min(MLE_GRID - 1)];
        let neg = |th: f64| -log_likelihood(counts, &(self.model)(th.clamp(self.interval.0, self.interval.1)));
        let x = golden_min(neg, lo, hi, 1e-13);
        Ok(if -neg(x) >= best_ll { x } else { self.grid[best_i] })
    }
}

/// Maximum-likelihood `θ` on `search_interval`: 256-point grid, then
/// golden-section refinement around the best grid point.
pub fn mle_phase(data: &ShotDataset, model: impl Fn(f64) -> Vec<f64>, search_interval: (f64, f64)) -> Result<f64> {
    MleProblem::new(model, search_interval)?.solve(&data.counts())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimationReport {
    /// Mean estimate over trials.
    pub estimate: f64,
    pub bias: f64,
    pub empirical_mse: f64,
    /// `1/(shots_per_trial · CFI)`.
    pub crb: f64,
    pub cfi: f64,
    pub ratio: f64,
    pub trials: usize,
    pub shots_per_trial: usize,
    pub seed: u64,
}

/// Sum in a balanced binary tree.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Independent sample → MLE rounds at `theta_true`; trial `k` draws from
/// stream `k` of `seed`.
#[allow(clippy::too_many_arguments)]
pub fn mse_vs_crb(
    family: &EvolutionFamily,
    basis: &MeasurementBasis,
    theta_true: f64,
    t: f64,
    shots_per_trial: usize,
    trials: usize,
    seed: u64,
) -> Result<EstimationReport> {
    mse_vs_crb_on(family, basis, theta_true, t, shots_per_trial, trials, seed, DEFAULT_INTERVAL)
}

#[allow(clippy::too_many_arguments)]
pub fn mse_vs_crb_on(
    family: &EvolutionFamily,
    basis: &MeasurementBasis,
    theta_true: f64,
    t: f64,
    shots_per_trial: usize,
    trials: usize,
    seed: u64,
    interval: (f64, f64),
) -> Result<EstimationReport> {
    if shots_per_trial < 1 || trials < 1 {
        return Err(invalid("trials", "shots_per_trial and trials must be at least 1"));
    }
    if !(theta_true > interval.0 && theta_true < interval.1) {
        return Err(invalid("theta_true", format!("{theta_true} outside the search interval")));
    }
    let cfi = cfi_projective(family, theta_true, t, basis)?.value;
    if !(cfi > 1e-12) || !cfi.is_finite() {
        return Err(Error::NoInformation("no information at theta_true".into()));
    }
    let truth = basis.probabilities(&family.evaluate(theta_true, t)?)?;
    let cdf = cumulative(&truth);
    let model = |th: f64| {
        family
            .evaluate(th, t)
            .and_then(|s| basis.probabilities(&s))
            .unwrap_or_else(|_| vec![0.0; basis.dim()])
    };
    let problem = MleProblem::new(model, interval)?;
    let estimates = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let mut counts = vec![0u64; truth.len()];
            for _ in 0..shots_per_trial {
                counts[draw(&mut rng, &cdf)] += 1;
            }
            problem.solve(&counts)
        })
        .collect::<Result<Vec<f64>>>()?;
    let sq: Vec<f64> = estimates.iter().map(|e| (e - theta_true).powi(2)).collect();
    let empirical_mse = pairwise_sum(&sq) / trials as f64;
    let estimate = pairwise_sum(&estimates) / trials as f64;
    let crb = 1.0 / (shots_per_trial as f64 * cfi);
    Ok(EstimationReport {
        estimate,
        bias: estimate - theta_true,
        empirical_mse,
        crb,
        cfi,
        ratio: empirical_mse / crb,
        trials,
        shots_per_trial,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscriminationReport {
    /// Bayes error of guessing the likelier value for each outcome.
    pub error_probability: f64,
    /// Expected posterior standard deviation of `θ` after one measurement.
    pub posterior_uncertainty: f64,
    /// Standard deviation of the prior.
    pub prior_uncertainty: f64,
}

/// Distinguishes the two values of a two-atom prior by measuring the state
/// each value produces.
pub fn discriminate_two_values(
    prior: &PriorDistribution,
    protocol: impl Fn(f64) -> Result<StateVector>,
    basis: &MeasurementBasis,
) -> Result<DiscriminationReport> {
    let [(va, pa), (vb, pb)] = prior
        .two_atoms()
        .ok_or_else(|| invalid("prior", "discrimination needs exactly two support points"))?;
    let prob_a = basis.probabilities(&protocol(va)?)?;
    let prob_b = basis.probabilities(&protocol(vb)?)?;
    let gap = (va - vb).abs();
    let mut error_probability = 0.0;
    let mut spread = 0.0;
    for (qa, qb) in prob_a.iter().zip(&prob_b) {
        let (ja, jb) = (pa * qa, pb * qb);
        error_probability += ja.min(jb);
        // P(i)·√(w_a w_b) with posterior weights w = joint / P(i)
        spread += (ja * jb).sqrt();
    }
    Ok(DiscriminationReport {
        error_probability,
        posterior_uncertainty: gap * spread,
        prior_uncertainty: gap * (pa * pb).sqrt(),
    })
}

/// Minimum error for discriminating `a` (weight `pa`) from `b` (weight `pb`)
/// with any measurement: `(1 − √(1 − 4 pa pb |⟨a|b⟩|²))/2`.
pub fn helstrom_error(pa: f64, a: &StateVector, pb: f64, b: &StateVector) -> Result<f64> {
    let f = a.fidelity(b)?;
    Ok((1.0 - (1.0 - 4.0 * pa * pb * f).max(0.0).sqrt()) / 2.0)
}

/// Eigenbasis of `pa|a⟩⟨a| − pb|b⟩⟨b|`, which attains [`helstrom_error`].
pub fn helstrom_basis(pa: f64, a: &StateVector, pb: f64, b: &StateVector) -> Result<MeasurementBasis> {
    crate::qcore::check_dim(a.dim(), b.dim())?;
    let dim = a.dim();
    if dim > MAX_DENSE_DIM {
        return Err(invalid("state", "too large for a dense Helstrom operator"));
    }
    let gamma = nalgebra::DMatrix::from_fn(dim, dim, |i, j| {
        a.amplitudes()[i] * a.amplitudes()[j].conj() * pa - b.amplitudes()[i] * b.amplitudes()[j].conj() * pb
    });
    let op = crate::qcore::HamiltonianSpec::from_matrix(gamma, 1.0, "helstrom")?;
    let vectors = (0..dim)
        .map(|k| StateVector::normalized(op.eigenpair(k).1))
        .collect::<Result<Vec<_>>>()?;
    MeasurementBasis::new(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::HamiltonianSpec;
    use crate::states::plus_x;
    use std::f64::consts::FRAC_PI_2;

    fn bernoulli(th: f64) -> Vec<f64> {
        vec![(th / 2.0).cos().powi(2), (th / 2.0).sin().powi(2)]
    }

    fn data(bits: &[usize]) -> ShotDataset {
        ShotDataset::from_outcomes(bits.to_vec(), 2, "literal").unwrap()
    }

    #[test]
    fn eigenstate_always_same_outcome() {
        let z = MeasurementBasis::computational(1).unwrap();
        let d = sample_outcomes(&StateVector::basis(1, 1).unwrap(), &z, 500, 9).unwrap();
        assert!(d.outcomes.iter().all(|&o| o == 1));
    }

    #[test]
    fn plus_state_frequency() {
        let z = MeasurementBasis::computational(1).unwrap();
        let d = sample_outcomes(&plus_x(), &z, 100_000, 17).unwrap();
        let f = d.outcomes.iter().filter(|&&o| o == 1).count() as f64 / 1e5;
        assert!((f - 0.5).abs() < 0.01);
    }

    #[test]
    fn replay_is_identical() {
        let z = MeasurementBasis::computational(1).unwrap();
        let a = sample_outcomes(&plus_x(), &z, 1000, 42).unwrap();
        let b = sample_outcomes(&plus_x(), &z, 1000, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_outcomes_stream(&plus_x(), &z, 1000, 42, 1).unwrap();
        assert_ne!(a.outcomes, c.outcomes);
    }

    #[test]
    fn stats_examples() {
        let s = dataset_stats(&data(&[1; 10])).unwrap();
        assert_eq!((s.mean, s.variance), (1.0, 0.0));
        let s = dataset_stats(&data(&[0, 1, 1, 1, 0, 0, 1, 1, 1, 0])).unwrap();
        assert_eq!((s.mean, s.variance), (0.6, 0.24));
        let s = dataset_stats(&data(&[0])).unwrap();
        assert_eq!((s.mean, s.variance), (0.0, 0.0));
        assert!(ShotDataset::from_outcomes(vec![2], 2, "x").is_err());
    }

    #[test]
    fn mle_boundary_and_closed_form() {
        let est = mle_phase(&data(&[1; 10]), bernoulli, DEFAULT_INTERVAL).unwrap();
        assert!((est - DEFAULT_INTERVAL.1).abs() < 1e-8);
        let est = mle_phase(&data(&[0, 1, 0, 1]), bernoulli, DEFAULT_INTERVAL).unwrap();
        assert!((est - FRAC_PI_2).abs() < 1e-6);
        let bits = [0, 1, 1, 1, 0, 0, 1, 1, 1, 0];
        let est = mle_phase(&data(&bits), bernoulli, DEFAULT_INTERVAL).unwrap();
        assert!((est - 2.0 * 0.6f64.sqrt().asin()).abs() < 1e-6);
    }

    #[test]
    fn mle_rejects_impossible_data() {
        let never = |_: f64| vec![1.0, 0.0];
        assert_eq!(mle_phase(&data(&[1, 1]), never, DEFAULT_INTERVAL), Err(Error::ImpossibleData));
    }

    #[test]
    fn mse_requires_information() {
        let family = EvolutionFamily::multiplicative(plus_x(), HamiltonianSpec::single_z(1.0)).unwrap();
        let z = MeasurementBasis::computational(1).unwrap();
        assert!(matches!(mse_vs_crb(&family, &z, 1.0, 1.0, 10, 10, 1), Err(Error::NoInformation(_))));
    }

    #[test]
    fn perfect_discrimination() {
        let prior = PriorDistribution::discrete(vec![(FRAC_PI_2, 0.5), (PI, 0.5)]).unwrap();
        let z = MeasurementBasis::computational(1).unwrap();
        let r = discriminate_two_values(&prior, |v| StateVector::basis(1, usize::from(v > 2.0)), &z).unwrap();
        assert_eq!(r.error_probability, 0.0);
        assert_eq!(r.posterior_uncertainty, 0.0);
        assert!((r.prior_uncertainty - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn identical_states_are_a_coin_flip() {
        let prior = PriorDistribution::discrete(vec![(0.0, 0.5), (1.0, 0.5)]).unwrap();
        let z = MeasurementBasis::computational(1).unwrap();
        let r = discriminate_two_values(&prior, |_| Ok(plus_x()), &z).unwrap();
        assert!((r.error_probability - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
    }
}
