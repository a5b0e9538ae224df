//! Named states: single spins, GHZ, squeezed pairs and their Dicke-basis
//! generalization, QND-prepared mixtures, and the tensor-factor counter.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::qcore::{tensor, StateVector, MAX_SPINS};

/// Default rank-1 threshold for [`factor_count`].
pub const DEFAULT_FACTOR_TOL: f64 = 1e-10;

/// Weight tolerance for mixtures.
pub const WEIGHT_TOL: f64 = 1e-12;

/// `α₁|0⟩ + α₂|1⟩`, normalized.
pub fn make_single_spin(alpha1: C64, alpha2: C64) -> Result<StateVector> {
    StateVector::normalized(vec![alpha1, alpha2])
}

/// `|x⟩ = (|0⟩ + |1⟩)/√2`.
pub fn plus_x() -> StateVector {
    StateVector::from_real(&[1.0, 1.0]).expect("nonzero")
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn make_ghz(n: usize) -> Result<StateVector> {
    if n < 1 {
        return Err(invalid("n", "GHZ state needs at least one spin"));
    }
    if n > MAX_SPINS {
        return Err(invalid("n", format!("{n} spins exceeds the limit {MAX_SPINS}")));
    }
    let dim = 1usize << n;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new(1.0, 0.0);
    amps[dim - 1] = C64::new(1.0, 0.0);
    StateVector::normalized(amps)
}

/// Parameters of a squeezed state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezedSpec {
    num_spins: usize,
    epsilon: f64,
}

impl SqueezedSpec {
    /// `epsilon` must lie in `[0, 1]`; `ε = 1` is the unsqueezed boundary.
    pub fn new(num_spins: usize, epsilon: f64) -> Result<Self> {
        if num_spins < 2 {
            return Err(invalid("num_spins", "squeezed state needs at least two spins"));
        }
        if num_spins > MAX_SPINS {
            return Err(invalid("num_spins", format!("{num_spins} spins exceeds the limit {MAX_SPINS}")));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(invalid("epsilon", format!("must lie in [0, 1], got {epsilon}")));
        }
        Ok(Self { num_spins, epsilon })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Squeezed state.
///
/// Two spins: `(ε|00⟩ + |10⟩ + |01⟩ + ε|11⟩)/√(2(1+ε²))`.
///
/// More spins: a Gaussian over the symmetric Dicke states `|N, m⟩` (`m` spins
/// in `|1⟩`), weights `exp(−(m − N/2)²/(2σ²))` with `σ² = εN/4`. At `ε = 0`
/// only the level(s) closest to `N/2` survive.
pub fn make_squeezed(spec: SqueezedSpec) -> Result<StateVector> {
    let n = spec.num_spins;
    let eps = spec.epsilon;
    if n == 2 {
        let norm = (2.0 * (1.0 + eps * eps)).sqrt();
        let e = C64::new(eps / norm, 0.0);
        let one = C64::new(1.0 / norm, 0.0);
        return StateVector::normalized(vec![e, one, one, e]);
    }
    let centre = n as f64 / 2.0;
    let level_weights: Vec<f64> = if eps == 0.0 {
        let best = (0..=n).map(|m| (m as f64 - centre).abs()).fold(f64::INFINITY, f64::min);
        (0..=n).map(|m| if (m as f64 - centre).abs() == best { 1.0 } else { 0.0 }).collect()
    } else {
        let sigma2 = eps * n as f64 / 4.0;
        (0..=n).map(|m| (-(m as f64 - centre).powi(2) / (2.0 * sigma2)).exp()).collect()
    };
    let amps = (0..1usize << n)
        .map(|k| {
            let m = k.count_ones() as usize;
            C64::new(level_weights[m] / binomial(n, m).sqrt(), 0.0)
        })
        .collect();
    StateVector::normalized(amps)
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability-weighted list of pure states with θ-independent weights.
#[derive(Clone, Debug)]
pub struct MixedEnsemble {
    components: Vec<(f64, StateVector)>,
}

impl MixedEnsemble {
    pub fn new(components: Vec<(f64, StateVector)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::InvalidDistribution("mixture has no components".into()));
        };
        let dim = first.dim();
        let mut total = 0.0;
        for (w, s) in &components {
            if !(*w >= 0.0) {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
            crate::qcore::check_dim(dim, s.dim())?;
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
        }
        Ok(Self { components })
    }

    pub fn pure(state: StateVector) -> Self {
        Self { components: vec![(1.0, state)] }
    }

    pub fn components(&self) -> &[(f64, StateVector)] {
        &self.components
    }

    pub fn num_spins(&self) -> usize {
        self.components[0].1.num_spins()
    }
}

/// Mixture left behind by a partial projective z-measurement.
///
/// `k = round(projected_fraction·n)` spins are projected; each ends in `|0⟩`
/// with probability `outcome_probability`. Outcome patterns with the same number
/// of `|0⟩` results are merged into one component whose representative puts the
/// `|0⟩` results first (spins `0..j`), then the `|1⟩` results, then the
/// untouched `|x⟩` spins. Zero-weight patterns are dropped.
pub fn make_qnd_ensemble(n: usize, projected_fraction: f64, outcome_probability: f64) -> Result<MixedEnsemble> {
    if n < 1 {
        return Err(invalid("n", "needs at least one spin"));
    }
    if n > MAX_SPINS {
        return Err(invalid("n", format!("{n} spins exceeds the limit {MAX_SPINS}")));
    }
    if !(0.0..=1.0).contains(&projected_fraction) {
        return Err(invalid("projected_fraction", format!("must lie in [0, 1], got {projected_fraction}")));
    }
    if !(0.0..=1.0).contains(&outcome_probability) {
        return Err(invalid("outcome_probability", format!("must lie in [0, 1], got {outcome_probability}")));
    }
    let k = (projected_fraction * n as f64).round() as usize;
    let zero = StateVector::basis(1, 0)?;
    let one = StateVector::basis(1, 1)?;
    let x = plus_x();
    let mut components = Vec::new();
    for j in (0..=k).rev() {
        let w = binomial(k, j) * outcome_probability.powi(j as i32) * (1.0 - outcome_probability).powi((k - j) as i32);
        if w == 0.0 {
            continue;
        }
        let factors: Vec<StateVector> = std::iter::repeat(zero.clone())
            .take(j)
            .chain(std::iter::repeat(one.clone()).take(k - j))
            .chain(std::iter::repeat(x.clone()).take(n - k))
            .collect();
        components.push((w, tensor(&factors)?));
    }
    MixedEnsemble::new(components)
}

/// Number of indivisible tensor factors of `state` under the fixed spin order.
///
/// Contiguous cuts are tried left to right; a cut is accepted when the largest
/// Schmidt coefficient is at least `1 − tol`, and both sides are then counted
/// recursively.
pub fn factor_count(state: &StateVector, tol: f64) -> usize {
    count_factors(state.amplitudes(), state.num_spins(), tol)
}

fn count_factors(amps: &[C64], n: usize, tol: f64) -> usize {
    if n <= 1 {
        return 1;
    }
    for cut in 1..n {
        let rows = 1usize << cut;
        let cols = 1usize << (n - cut);
        // row-major: left spins are the high bits
        let m = DMatrix::from_row_slice(rows, cols, amps);
        let smax = m.singular_values().iter().copied().fold(0.0, f64::max);
        if smax >= 1.0 - tol {
            // rank one: the heaviest row and column carry the factors
            let right = normalized_line((0..rows).map(|r| m.row(r).iter().copied().collect()));
            let left = normalized_line((0..cols).map(|c| m.column(c).iter().copied().collect()));
            return count_factors(&left, cut, tol) + count_factors(&right, n - cut, tol);
        }
    }
    1
}

fn normalized_line(lines: impl Iterator<Item = Vec<C64>>) -> Vec<C64> {
    let mut best = lines
        .map(|v| (crate::qcore::norm_sqr(&v), v))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("non-empty")
        .1;
    let inv = 1.0 / crate::qcore::norm_sqr(&best).sqrt();
    best.iter_mut().for_each(|z| *z *= inv);
    best
}

/// Ensemble described by factor states and how many copies of each it holds.
#[derive(Clone, Debug)]
pub struct EnsembleSpec {
    factors: Vec<(StateVector, usize)>,
}

impl EnsembleSpec {
    pub fn new(factors: Vec<(StateVector, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::NoFactors);
        }
        if factors.iter().any(|(_, m)| *m == 0) {
            return Err(invalid("multiplicity", "must be a positive integer"));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(StateVector, usize)] {
        &self.factors
    }

    pub fn total_spins(&self) -> usize {
        self.factors.iter().map(|(s, m)| s.num_spins() * m).sum()
    }

    /// Full product state, one copy after another in factor order.
    pub fn to_state(&self) -> Result<StateVector> {
        if self.total_spins() > MAX_SPINS {
            return Err(invalid("ensemble", format!("{} spins exceeds the limit {MAX_SPINS}", self.total_spins())));
        }
        let all: Vec<StateVector> = self
            .factors
            .iter()
            .flat_map(|(s, m)| std::iter::repeat(s.clone()).take(*m))
            .collect();
        tensor(&all)
    }
}

/// `Σ multiplicity × factor_count(factor)`.
pub fn factor_count_ensemble(spec: &EnsembleSpec, tol: f64) -> usize {
    spec.factors.iter().map(|(s, m)| m * factor_count(s, tol)).sum()
}
