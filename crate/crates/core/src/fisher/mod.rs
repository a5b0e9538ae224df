//! Fisher information: pure-state QFI, classical information of discrete
//! outcome distributions, mixture and prior-averaged forms, the response-speed
//! bound for piecewise schedules, and single-spin measurement optimization.

mod measurement;

pub use measurement::{
    cfi_mixture_projective, cfi_projective, optimize_measurement, outcome_distribution, MeasurementBasis,
    OptimizedMeasurement, BASIS_TOL,
};

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::qcore::{
    check_dim, evolve_multiplicative, evolve_piecewise, inner, norm_sqr, HamiltonianSpec, PiecewiseSchedule,
    StateVector,
};
use crate::states::MixedEnsemble;

/// Outcomes below this probability are treated as impossible.
pub const ZERO_PROB: f64 = 1e-15;
/// Derivative magnitude under which an impossible outcome carries no signal.
pub const ZERO_SLOPE: f64 = 1e-12;
/// Normalization tolerance for outcome distributions and priors.
pub const DIST_TOL: f64 = 1e-9;
/// Eigenvalue gap below which a generator counts as fully degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// `d|ψ(θ,t)⟩/dθ`.
#[derive(Clone, Debug)]
pub struct DerivativeVector {
    pub components: Vec<C64>,
    pub mode: DerivativeMode,
    /// Central-difference step, 0 for analytic derivatives.
    pub step: f64,
    pub theta: f64,
    pub t: f64,
}

impl DerivativeVector {
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.components)
    }
}

/// A θ-parameterized pure-state family `θ ↦ |ψ(θ,t)⟩`.
#[derive(Clone, Debug)]
pub enum EvolutionFamily {
    /// `exp(−iθtH)|ψ₀⟩`.
    Multiplicative { initial: StateVector, hamiltonian: HamiltonianSpec },
    /// Segment `j` applies `exp(−iθ·dur_j·H_j)`; evaluation at `t` runs the
    /// schedule up to time `t`.
    Piecewise { initial: StateVector, schedule: PiecewiseSchedule },
}

impl EvolutionFamily {
    pub fn multiplicative(initial: StateVector, hamiltonian: HamiltonianSpec) -> Result<Self> {
        check_dim(hamiltonian.dim(), initial.dim())?;
        Ok(Self::Multiplicative { initial, hamiltonian })
    }

    pub fn piecewise(initial: StateVector, schedule: PiecewiseSchedule) -> Result<Self> {
        check_dim(schedule.dim(), initial.dim())?;
        Ok(Self::Piecewise { initial, schedule })
    }

    pub fn initial(&self) -> &StateVector {
        match self {
            Self::Multiplicative { initial, .. } | Self::Piecewise { initial, .. } => initial,
        }
    }

    pub fn dim(&self) -> usize {
        self.initial().dim()
    }

    /// `|ψ(θ,t)⟩`.
    pub fn evaluate(&self, theta: f64, t: f64) -> Result<StateVector> {
        match self {
            Self::Multiplicative { initial, hamiltonian } => evolve_multiplicative(initial, hamiltonian, theta, t),
            Self::Piecewise { initial, schedule } => match schedule.truncated(t)? {
                Some(s) => evolve_piecewise(initial, &s, theta),
                None => Ok(initial.clone()),
            },
        }
    }
}

/// `1e-6·max(1, |θ|)`.
pub fn default_step(theta: f64) -> f64 {
    1e-6 * theta.abs().max(1.0)
}

/// `d|ψ(θ,t)⟩/dθ`, analytically (`−itH|ψ(θ,t)⟩`) or by central difference.
pub fn state_derivative(family: &EvolutionFamily, theta: f64, t: f64, mode: DerivativeMode) -> Result<DerivativeVector> {
    match mode {
        DerivativeMode::Analytic => match family {
            EvolutionFamily::Multiplicative { hamiltonian, .. } => {
                let psi = family.evaluate(theta, t)?;
                let factor = C64::new(0.0, -t);
                let components = hamiltonian.apply(psi.amplitudes())?.into_iter().map(|z| z * factor).collect();
                Ok(DerivativeVector { components, mode, step: 0.0, theta, t })
            }
            EvolutionFamily::Piecewise { .. } => Err(Error::AnalyticUnavailable),
        },
        DerivativeMode::FiniteDifference => state_derivative_with_step(family, theta, t, default_step(theta)),
    }
}

/// Central difference with an explicit step.
pub fn state_derivative_with_step(family: &EvolutionFamily, theta: f64, t: f64, step: f64) -> Result<DerivativeVector> {
    if !(step > 0.0) {
        return Err(invalid("step", "finite-difference step must be > 0"));
    }
    let plus = family.evaluate(theta + step, t)?;
    let minus = family.evaluate(theta - step, t)?;
    let inv = 1.0 / (2.0 * step);
    let components = plus
        .amplitudes()
        .iter()
        .zip(minus.amplitudes())
        .map(|(a, b)| (a - b) * inv)
        .collect();
    Ok(DerivativeVector { components, mode: DerivativeMode::FiniteDifference, step, theta, t })
}

/// Analytic where available, central difference otherwise.
pub fn best_derivative(family: &EvolutionFamily, theta: f64, t: f64) -> Result<DerivativeVector> {
    match family {
        EvolutionFamily::Multiplicative { .. } => state_derivative(family, theta, t, DerivativeMode::Analytic),
        EvolutionFamily::Piecewise { .. } => state_derivative(family, theta, t, DerivativeMode::FiniteDifference),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FisherKind {
    QfiPure,
    CfiDiscrete,
    CfiBernoulli,
    MixtureBound,
    Averaged,
    PangBound,
}

impl FisherKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::QfiPure => "qfi_pure",
            Self::CfiDiscrete => "cfi_discrete",
            Self::CfiBernoulli => "cfi_bernoulli",
            Self::MixtureBound => "mixture_bound",
            Self::Averaged => "averaged",
            Self::PangBound => "pang_bound",
        }
    }
}

/// An information value with the formula that produced it. `value` is
/// `+∞` when an impossible outcome has a nonzero slope.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FisherReport {
    pub value: f64,
    pub kind: FisherKind,
    pub theta: Option<f64>,
    pub t: Option<f64>,
}

impl FisherReport {
    pub fn new(kind: FisherKind, value: f64) -> Self {
        Self { value, kind, theta: None, t: None }
    }

    pub fn at(mut self, theta: f64, t: f64) -> Self {
        self.theta = Some(theta);
        self.t = Some(t);
        self
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

/// `4[⟨dψ|dψ⟩ − |⟨ψ|dψ⟩|²]`.
pub fn qfi_pure(psi: &StateVector, dpsi: &DerivativeVector) -> Result<FisherReport> {
    check_dim(psi.dim(), dpsi.components.len())?;
    let overlap = inner(psi.amplitudes(), &dpsi.components);
    let value = 4.0 * (dpsi.norm_sqr() - overlap.norm_sqr());
    Ok(FisherReport::new(FisherKind::QfiPure, value.max(0.0)).at(dpsi.theta, dpsi.t))
}

/// QFI of a family at `(θ, t)` with the best available derivative.
pub fn qfi_of_family(family: &EvolutionFamily, theta: f64, t: f64) -> Result<FisherReport> {
    let psi = family.evaluate(theta, t)?;
    let dpsi = best_derivative(family, theta, t)?;
    qfi_pure(&psi, &dpsi)
}

/// `4 t² Var(H)` in the initial state, the Heisenberg-picture form of the QFI
/// for multiplicative generators.
pub fn qfi_variance_form(initial: &StateVector, h: &HamiltonianSpec, t: f64) -> Result<f64> {
    Ok(4.0 * t * t * h.variance(initial)?)
}

/// `⟨dψ⊥|dψ⊥⟩` with `dψ⊥ = dψ − |ψ⟩⟨ψ|dψ⟩`.
pub fn orthogonal_projection_norm(psi: &StateVector, dpsi: &DerivativeVector) -> Result<f64> {
    check_dim(psi.dim(), dpsi.components.len())?;
    let overlap = inner(psi.amplitudes(), &dpsi.components);
    let perp: Vec<C64> = dpsi
        .components
        .iter()
        .zip(psi.amplitudes())
        .map(|(d, a)| d - a * overlap)
        .collect();
    Ok(norm_sqr(&perp))
}

/// `Σ (dp_i)²/p_i` over a discrete outcome distribution.
pub fn cfi_discrete(probs: &[f64], dprobs: &[f64]) -> Result<FisherReport> {
    if probs.len() != dprobs.len() {
        return Err(Error::DimensionMismatch { expected: probs.len(), found: dprobs.len() });
    }
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    if let Some(p) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
        return Err(Error::InvalidDistribution(format!("probability {p} is not a finite non-negative number")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > DIST_TOL {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
    }
    let dtotal: f64 = dprobs.iter().sum();
    if !(dtotal.abs() <= DIST_TOL) {
        return Err(Error::InvalidDistribution(format!("derivatives sum to {dtotal}")));
    }
    let mut value = 0.0;
    for (&p, &dp) in probs.iter().zip(dprobs) {
        if p < ZERO_PROB {
            if dp.abs() >= ZERO_SLOPE {
                return Ok(FisherReport::new(FisherKind::CfiDiscrete, f64::INFINITY));
            }
            continue;
        }
        value += dp * dp / p;
    }
    Ok(FisherReport::new(FisherKind::CfiDiscrete, value))
}

/// `dp²/(p(1−p))` for a two-outcome measurement, with the dark-fringe rule at
/// `p ∈ {0, 1}`: zero slope gives zero information, nonzero slope is infinite.
pub fn cfi_bernoulli(p1: f64, dp1: f64) -> Result<FisherReport> {
    if !(0.0..=1.0).contains(&p1) {
        return Err(invalid("p1", format!("probability must lie in [0, 1], got {p1}")));
    }
    let value = if p1 < ZERO_PROB || 1.0 - p1 < ZERO_PROB {
        if dp1.abs() < ZERO_SLOPE {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        dp1 * dp1 / (p1 * (1.0 - p1))
    };
    Ok(FisherReport::new(FisherKind::CfiBernoulli, value))
}

/// `Σ p_l · QFI_l` with every component evolved under `h`; an upper bound on the
/// information of the mixture.
pub fn qfi_mixture_bound(ensemble: &MixedEnsemble, h: &HamiltonianSpec, theta: f64, t: f64) -> Result<FisherReport> {
    let mut value = 0.0;
    for (w, s) in ensemble.components() {
        let family = EvolutionFamily::multiplicative(s.clone(), h.clone())?;
        value += w * qfi_of_family(&family, theta, t)?.value;
    }
    Ok(FisherReport::new(FisherKind::MixtureBound, value).at(theta, t))
}

/// Prior over `θ`: discrete atoms or densities on an increasing grid.
#[derive(Clone, Debug)]
pub enum PriorDistribution {
    Discrete(Vec<(f64, f64)>),
    Grid { points: Vec<f64>, densities: Vec<f64> },
}

impl PriorDistribution {
    /// `(value, probability)` atoms.
    pub fn discrete(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("prior has no atoms".into()));
        }
        if let Some((_, p)) = atoms.iter().find(|(v, p)| !(*p >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidDistribution(format!("invalid atom probability {p}")));
        }
        let total: f64 = atoms.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidDistribution(format!("prior sums to {total}")));
        }
        Ok(Self::Discrete(atoms))
    }

    /// Densities on a strictly increasing grid; trapezoid integral must be 1.
    pub fn grid(points: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if points.len() < 2 || points.len() != densities.len() {
            return Err(Error::InvalidDistribution("grid needs >= 2 points and one density per point".into()));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidDistribution("grid points must be strictly increasing".into()));
        }
        if densities.iter().any(|d| !(*d >= 0.0)) {
            return Err(Error::InvalidDistribution("negative density".into()));
        }
        let total = trapezoid(&points, &densities);
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidDistribution(format!("prior integrates to {total}")));
        }
        Ok(Self::Grid { points, densities })
    }

    /// Uniform density on `[a, b]` sampled at `n` points.
    pub fn uniform_grid(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(b > a) || n < 2 {
            return Err(invalid("grid", "need b > a and n >= 2"));
        }
        let points = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
        Self::grid(points, vec![1.0 / (b - a); n])
    }

    /// Two atoms `(value, probability)`, if this is such a prior.
    pub fn two_atoms(&self) -> Option<[(f64, f64); 2]> {
        match self {
            Self::Discrete(a) if a.len() == 2 => Some([a[0], a[1]]),
            _ => None,
        }
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(xs, ys)| (xs[1] - xs[0]) * (ys[0] + ys[1]) / 2.0).sum()
}

/// Information averaged over a prior (weighted sum or trapezoid quadrature).
pub fn averaged_info(prior: &PriorDistribution, info_fn: impl Fn(f64) -> Result<FisherReport>) -> Result<FisherReport> {
    let mut t = None;
    let mut eval = |theta: f64| -> Result<f64> {
        let r = info_fn(theta)?;
        t = t.or(r.t);
        Ok(r.value)
    };
    let value = match prior {
        PriorDistribution::Discrete(atoms) => {
            let mut acc = 0.0;
            for &(v, p) in atoms {
                if p > 0.0 {
                    acc += p * eval(v)?;
                }
            }
            acc
        }
        PriorDistribution::Grid { points, densities } => {
            let weighted = points
                .iter()
                .zip(densities)
                .map(|(&x, &d)| Ok(d * eval(x)?))
                .collect::<Result<Vec<f64>>>()?;
            trapezoid(points, &weighted)
        }
    };
    Ok(FisherReport { value, kind: FisherKind::Averaged, theta: None, t })
}

/// Extremes of `∂H/∂θ` for one segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentSpectrum {
    pub mu_max: f64,
    pub mu_min: f64,
    pub duration: f64,
}

/// Per-segment spectra of `∂H/∂θ`; for segments `θ·H_j` this is `H_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeSpectrum {
    pub segments: Vec<SegmentSpectrum>,
}

pub fn derivative_spectrum(schedule: &PiecewiseSchedule) -> DerivativeSpectrum {
    let segments = schedule
        .segments()
        .iter()
        .map(|(h, d)| {
            let (mu_min, mu_max) = h.spectral_range();
            SegmentSpectrum { mu_max, mu_min, duration: *d }
        })
        .collect();
    DerivativeSpectrum { segments }
}

/// `(Σ_j dur_j (μmax_j − μmin_j))²`. Generators are Hermitian by construction
/// of [`HamiltonianSpec`].
pub fn pang_jordan_bound(schedule: &PiecewiseSchedule) -> FisherReport {
    let spectrum = derivative_spectrum(schedule);
    let speed: f64 = spectrum.segments.iter().map(|s| s.duration * (s.mu_max - s.mu_min)).sum();
    let mut r = FisherReport::new(FisherKind::PangBound, speed * speed);
    r.t = Some(schedule.total_time());
    r
}

/// `(|μmax⟩ + e^{iΦ}|μmin⟩)/√2` from the generator's extremal eigenvectors.
pub fn make_extremal_state(generator: &HamiltonianSpec, phase: f64) -> Result<StateVector> {
    let dim = generator.dim();
    let (mu_min, mu_max) = generator.spectral_range();
    if mu_max - mu_min <= DEGENERACY_TOL {
        return Err(Error::NoInformation("generator is fully degenerate".into()));
    }
    let eigenvalues = generator.eigenvalues();
    // lowest ascending index within each extremal level
    let top = eigenvalues.iter().position(|e| mu_max - e <= DEGENERACY_TOL).expect("max exists");
    let (_, v_max) = generator.eigenpair(top);
    let (_, v_min) = generator.eigenpair(0);
    let p = C64::from_polar(1.0, phase);
    let amps: Vec<C64> = (0..dim).map(|i| v_max[i] + p * v_min[i]).collect();
    StateVector::normalized(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_ghz, make_squeezed, plus_x, SqueezedSpec};
    use std::f64::consts::PI;

    fn single_family(gamma: f64) -> EvolutionFamily {
        EvolutionFamily::multiplicative(plus_x(), HamiltonianSpec::single_z(gamma)).unwrap()
    }

    #[test]
    fn single_spin_derivative_norm() {
        let d = state_derivative(&single_family(1.0), 0.3, 1.0, DerivativeMode::Analytic).unwrap();
        assert!((d.norm_sqr() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_coupling_gives_zero_derivative() {
        let d = state_derivative(&single_family(0.0), 0.3, 1.0, DerivativeMode::Analytic).unwrap();
        assert!(d.components.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn analytic_refused_for_schedules() {
        let s = PiecewiseSchedule::constant(HamiltonianSpec::single_z(1.0), 1.0).unwrap();
        let f = EvolutionFamily::piecewise(plus_x(), s).unwrap();
        assert_eq!(state_derivative(&f, 0.1, 1.0, DerivativeMode::Analytic).unwrap_err(), Error::AnalyticUnavailable);
    }

    #[test]
    fn qfi_examples() {
        assert!((qfi_of_family(&single_family(1.0), 0.4, 1.0).unwrap().value - 1.0).abs() < 1e-14);
        let ghz = EvolutionFamily::multiplicative(make_ghz(3).unwrap(), HamiltonianSpec::collective_z(3, 1.0).unwrap()).unwrap();
        assert!((qfi_of_family(&ghz, 0.2, 1.0).unwrap().value - 9.0).abs() < 1e-12);
        let h2 = HamiltonianSpec::collective_z(2, 1.0).unwrap();
        for eps in [0.0, 0.3, 1.0] {
            let s = make_squeezed(SqueezedSpec::new(2, eps).unwrap()).unwrap();
            let f = EvolutionFamily::multiplicative(s, h2.clone()).unwrap();
            let q = qfi_of_family(&f, 0.7, 1.0).unwrap().value;
            assert!((q - 4.0 * eps * eps / (1.0 + eps * eps)).abs() < 1e-12);
        }
    }

    #[test]
    fn qfi_dimension_mismatch() {
        let d = state_derivative(&single_family(1.0), 0.0, 1.0, DerivativeMode::Analytic).unwrap();
        assert!(qfi_pure(&make_ghz(2).unwrap(), &d).is_err());
    }

    #[test]
    fn eigenstate_has_no_orthogonal_response() {
        let f = EvolutionFamily::multiplicative(StateVector::basis(1, 1).unwrap(), HamiltonianSpec::single_z(1.0)).unwrap();
        let psi = f.evaluate(0.5, 2.0).unwrap();
        let d = best_derivative(&f, 0.5, 2.0).unwrap();
        assert!(orthogonal_projection_norm(&psi, &d).unwrap() < 1e-12);
        let f = single_family(1.0);
        let psi = f.evaluate(0.5, 1.0).unwrap();
        let d = best_derivative(&f, 0.5, 1.0).unwrap();
        assert!((orthogonal_projection_norm(&psi, &d).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn discrete_cfi_examples() {
        assert_eq!(cfi_discrete(&[0.5, 0.5], &[0.0, 0.0]).unwrap().value, 0.0);
        let th = PI / 3.0;
        let p = [(th / 2.0).sin().powi(2), (th / 2.0).cos().powi(2)];
        let dp = [th.sin() / 2.0, -th.sin() / 2.0];
        assert!((cfi_discrete(&p, &dp).unwrap().value - 1.0).abs() < 1e-14);
        assert!(cfi_discrete(&[0.5, 0.5], &[0.0]).is_err());
        assert!(cfi_discrete(&[0.6, 0.6], &[0.0, 0.0]).is_err());
        assert!(cfi_discrete(&[0.5, 0.5], &[0.1, 0.0]).is_err());
        assert!(cfi_discrete(&[1.0, 0.0], &[0.0, 0.0]).unwrap().value == 0.0);
        assert!(cfi_discrete(&[1.0, 0.0], &[-0.1, 0.1]).unwrap().is_infinite());
    }

    #[test]
    fn bernoulli_examples() {
        assert!((cfi_bernoulli(0.5, 0.5).unwrap().value - 1.0).abs() < 1e-15);
        assert_eq!(cfi_bernoulli(0.0, 0.0).unwrap().value, 0.0);
        assert_eq!(cfi_bernoulli(1.0, 0.0).unwrap().value, 0.0);
        assert!(cfi_bernoulli(0.0, 0.3).unwrap().is_infinite());
        let th = PI / 2.0;
        let r = cfi_bernoulli((th / 2.0).sin().powi(2), th.sin() / 2.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(cfi_bernoulli(1.5, 0.0).is_err());
        assert!(cfi_bernoulli(-0.1, 0.0).is_err());
    }

    #[test]
    fn mixture_bound_examples() {
        let h = HamiltonianSpec::single_z(1.0);
        let pure = MixedEnsemble::pure(plus_x());
        assert!((qfi_mixture_bound(&pure, &h, 0.1, 1.0).unwrap().value - 1.0).abs() < 1e-14);
        let mix = MixedEnsemble::new(vec![(0.5, StateVector::basis(1, 0).unwrap()), (0.5, plus_x())]).unwrap();
        assert!((qfi_mixture_bound(&mix, &h, 0.1, 1.0).unwrap().value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn averaged_examples() {
        let prior = PriorDistribution::discrete(vec![(0.0, 0.5), (PI / 2.0, 0.5)]).unwrap();
        let c = averaged_info(&prior, |_| Ok(FisherReport::new(FisherKind::QfiPure, 3.5))).unwrap();
        assert!((c.value - 3.5).abs() < 1e-15);
        let grid = PriorDistribution::uniform_grid(0.0, 2.0, 11).unwrap();
        let c = averaged_info(&grid, |_| Ok(FisherReport::new(FisherKind::QfiPure, 2.0))).unwrap();
        assert!((c.value - 2.0).abs() < 1e-14);
        assert!(PriorDistribution::discrete(vec![(0.0, 0.3)]).is_err());
        assert!(PriorDistribution::grid(vec![0.0, 1.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn pang_examples() {
        let s = PiecewiseSchedule::constant(HamiltonianSpec::single_z(1.5), 2.0).unwrap();
        assert!((pang_jordan_bound(&s).value - 9.0).abs() < 1e-14);
        let z = PiecewiseSchedule::new(vec![
            (HamiltonianSpec::single_z(0.0), 1.0),
            (HamiltonianSpec::single_z(1.0), 1.0),
        ])
        .unwrap();
        assert!((pang_jordan_bound(&z).value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn extremal_states() {
        let s = make_extremal_state(&HamiltonianSpec::single_z(1.0), 0.0).unwrap();
        assert!(s.distance_up_to_phase(&plus_x()).unwrap() < 1e-14);
        let x = HamiltonianSpec::collective_axis(1, 1.0, [1.0, 0.0, 0.0]).unwrap();
        let s = make_extremal_state(&x, 0.0).unwrap();
        assert!(s.distance_up_to_phase(&StateVector::basis(1, 0).unwrap()).unwrap() < 1e-12);
        let s = make_extremal_state(&HamiltonianSpec::collective_z(3, 1.0).unwrap(), 0.0).unwrap();
        assert!(s.distance_up_to_phase(&make_ghz(3).unwrap()).unwrap() < 1e-14);
        let flat = HamiltonianSpec::diagonal(vec![0.3, 0.3], 0.0, "flat").unwrap();
        assert!(matches!(make_extremal_state(&flat, 0.0), Err(Error::NoInformation(_))));
    }
}
