use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{best_derivative, cfi_discrete, qfi_of_family, EvolutionFamily, FisherKind, FisherReport};
use crate::error::{invalid, Error, Result};
use crate::qcore::{check_dim, inner, HamiltonianSpec, StateVector};
use crate::states::MixedEnsemble;

/// Orthonormality tolerance for measurement bases.
pub const BASIS_TOL: f64 = 1e-10;

/// Complete orthonormal projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    vectors: Vec<StateVector>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<StateVector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::NonOrthonormalBasis(f64::INFINITY));
        };
        let dim = first.dim();
        if vectors.len() != dim {
            return Err(invalid("basis", format!("{} vectors for dimension {dim}", vectors.len())));
        }
        let mut worst = 0.0f64;
        for (i, a) in vectors.iter().enumerate() {
            check_dim(dim, a.dim())?;
            for b in &vectors[i..] {
                let g = a.inner(b)?;
                let target = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                worst = worst.max((g - C64::new(target, 0.0)).norm());
            }
        }
        if worst > BASIS_TOL {
            return Err(Error::NonOrthonormalBasis(worst));
        }
        Ok(Self { vectors })
    }

    /// Computational basis on `num_spins` spins.
    pub fn computational(num_spins: usize) -> Result<Self> {
        let dim = 1usize << num_spins;
        Self::new((0..dim).map(|k| StateVector::basis(num_spins, k)).collect::<Result<_>>()?)
    }

    /// Single-spin basis along the Bloch axis with polar angle `polar` and
    /// azimuth `azimuth`; outcome 0 is the `+` direction.
    pub fn bloch(polar: f64, azimuth: f64) -> Self {
        let (c, s) = ((polar / 2.0).cos(), (polar / 2.0).sin());
        let e = C64::from_polar(1.0, azimuth);
        let up = StateVector::new(vec![C64::new(c, 0.0), e * s]).expect("unit");
        let down = StateVector::new(vec![C64::new(s, 0.0), -e * c]).expect("unit");
        Self { vectors: vec![up, down] }
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// `|⟨b_i|ψ⟩|²`.
    pub fn probabilities(&self, state: &StateVector) -> Result<Vec<f64>> {
        check_dim(self.dim(), state.dim())?;
        Ok(self.vectors.iter().map(|b| inner(b.amplitudes(), state.amplitudes()).norm_sqr()).collect())
    }
}

/// Born probabilities and their θ-derivatives `2 Re(⟨b|ψ⟩* ⟨b|dψ⟩)`.
pub fn outcome_distribution(
    family: &EvolutionFamily,
    theta: f64,
    t: f64,
    basis: &MeasurementBasis,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dim(basis.dim(), family.dim())?;
    let psi = family.evaluate(theta, t)?;
    let dpsi = best_derivative(family, theta, t)?;
    let mut probs = Vec::with_capacity(basis.dim());
    let mut dprobs = Vec::with_capacity(basis.dim());
    for b in basis.vectors() {
        let amp = inner(b.amplitudes(), psi.amplitudes());
        let damp = inner(b.amplitudes(), &dpsi.components);
        probs.push(amp.norm_sqr());
        dprobs.push(2.0 * (amp.conj() * damp).re);
    }
    Ok((probs, dprobs))
}

/// Classical information of a projective measurement on the family.
pub fn cfi_projective(family: &EvolutionFamily, theta: f64, t: f64, basis: &MeasurementBasis) -> Result<FisherReport> {
    let (p, dp) = outcome_distribution(family, theta, t, basis)?;
    Ok(cfi_discrete(&p, &dp)?.at(theta, t))
}

/// Classical information of the pooled outcome distribution of a mixture whose
/// components all evolve under `h`.
pub fn cfi_mixture_projective(
    ensemble: &MixedEnsemble,
    h: &HamiltonianSpec,
    theta: f64,
    t: f64,
    basis: &MeasurementBasis,
) -> Result<FisherReport> {
    let mut probs = vec![0.0; basis.dim()];
    let mut dprobs = vec![0.0; basis.dim()];
    for (w, s) in ensemble.components() {
        let family = EvolutionFamily::multiplicative(s.clone(), h.clone())?;
        let (p, dp) = outcome_distribution(&family, theta, t, basis)?;
        for i in 0..probs.len() {
            probs[i] += w * p[i];
            dprobs[i] += w * dp[i];
        }
    }
    Ok(cfi_discrete(&probs, &dprobs)?.at(theta, t))
}

/// Best single-spin projective measurement found by the optimizer.
#[derive(Clone, Debug)]
pub struct OptimizedMeasurement {
    pub basis: MeasurementBasis,
    /// Bloch polar angle of the outcome-0 axis.
    pub polar: f64,
    pub azimuth: f64,
    pub report: FisherReport,
    /// QFI of the same family, for comparison.
    pub qfi: f64,
}

const POLAR_STEPS: usize = 180;
const AZIMUTH_STEPS: usize = 360;

/// Maximizes the projective CFI of a single-spin family over Bloch-sphere axes:
/// a 180×360 grid followed by a shrinking compass search.
pub fn optimize_measurement(
    initial: &StateVector,
    h: &HamiltonianSpec,
    theta: f64,
    t: f64,
) -> Result<OptimizedMeasurement> {
    if initial.dim() != 2 {
        return Err(invalid("initial", "measurement optimization is restricted to a single spin"));
    }
    let family = EvolutionFamily::multiplicative(initial.clone(), h.clone())?;
    let psi = family.evaluate(theta, t)?;
    let dpsi = best_derivative(&family, theta, t)?;
    let score = |polar: f64, azimuth: f64| -> f64 {
        let basis = MeasurementBasis::bloch(polar, azimuth);
        let probs: Vec<f64> = basis.vectors().iter().map(|b| inner(b.amplitudes(), psi.amplitudes()).norm_sqr()).collect();
        let dprobs: Vec<f64> = basis
            .vectors()
            .iter()
            .map(|b| {
                let amp = inner(b.amplitudes(), psi.amplitudes());
                2.0 * (amp.conj() * inner(b.amplitudes(), &dpsi.components)).re
            })
            .collect();
        match cfi_discrete(&probs, &dprobs) {
            Ok(r) if r.value.is_finite() => r.value,
            _ => 0.0,
        }
    };

    let dp = PI / (POLAR_STEPS - 1) as f64;
    let da = 2.0 * PI / AZIMUTH_STEPS as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..POLAR_STEPS {
        for j in 0..AZIMUTH_STEPS {
            let (p, a) = (i as f64 * dp, j as f64 * da);
            let v = score(p, a);
            if v > best.0 {
                best = (v, p, a);
            }
        }
    }

    let (mut value, mut polar, mut azimuth) = best;
    let mut step = dp.max(da);
    while step > 1e-12 {
        let mut improved = false;
        for (dpol, daz) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let p = (polar + dpol).clamp(0.0, PI);
            let a = azimuth + daz;
            let v = score(p, a);
            if v > value {
                (value, polar, azimuth) = (v, p, a);
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    let azimuth = azimuth.rem_euclid(2.0 * PI);
    let qfi = qfi_of_family(&family, theta, t)?.value;
    Ok(OptimizedMeasurement {
        basis: MeasurementBasis::bloch(polar, azimuth),
        polar,
        azimuth,
        report: FisherReport::new(FisherKind::CfiDiscrete, value.max(0.0)).at(theta, t),
        qfi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::plus_x;
    use std::f64::consts::FRAC_PI_2;

    fn z_family() -> EvolutionFamily {
        EvolutionFamily::multiplicative(plus_x(), HamiltonianSpec::single_z(1.0)).unwrap()
    }

    #[test]
    fn x_basis_saturates_after_quarter_turn() {
        let x = MeasurementBasis::bloch(FRAC_PI_2, 0.0);
        let r = cfi_projective(&z_family(), FRAC_PI_2, 1.0, &x).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_basis_sees_nothing() {
        let z = MeasurementBasis::computational(1).unwrap();
        assert_eq!(cfi_projective(&z_family(), 0.4, 1.0, &z).unwrap().value, 0.0);
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let a = StateVector::basis(1, 0).unwrap();
        let b = plus_x();
        assert!(matches!(MeasurementBasis::new(vec![a.clone(), b]), Err(Error::NonOrthonormalBasis(_))));
        assert!(MeasurementBasis::new(vec![a]).is_err());
    }

    #[test]
    fn optimizer_finds_equatorial_axis() {
        let h = HamiltonianSpec::single_z(1.0);
        let opt = optimize_measurement(&plus_x(), &h, 0.3, 1.0).unwrap();
        assert!(opt.report.value >= opt.qfi - 1e-4);
        assert!((opt.polar - FRAC_PI_2).abs() < 1e-3);
    }

    #[test]
    fn optimizer_on_static_family() {
        let h = HamiltonianSpec::single_z(0.0);
        let opt = optimize_measurement(&plus_x(), &h, 0.3, 1.0).unwrap();
        assert_eq!(opt.report.value, 0.0);
    }
}
