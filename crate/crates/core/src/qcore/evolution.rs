use num_complex::Complex64 as C64;

use super::hamiltonian::HamiltonianSpec;
use super::state::{check_dim, StateVector};
use crate::error::{invalid, Result};

/// Tolerance on `total_time` bookkeeping and on truncation times.
pub const TIME_TOL: f64 = 1e-12;

/// Ordered list of `(generator, duration)` segments; segment `j` evolves the
/// state under `θ·H_j` for its duration.
#[derive(Clone, Debug)]
pub struct PiecewiseSchedule {
    segments: Vec<(HamiltonianSpec, f64)>,
    total_time: f64,
}

impl PiecewiseSchedule {
    pub fn new(segments: Vec<(HamiltonianSpec, f64)>) -> Result<Self> {
        let Some((first, _)) = segments.first() else {
            return Err(invalid("segments", "schedule is empty"));
        };
        let dim = first.dim();
        for (h, dur) in &segments {
            if !(*dur > 0.0) || !dur.is_finite() {
                return Err(invalid("duration", format!("segment duration must be > 0, got {dur}")));
            }
            check_dim(dim, h.dim())?;
        }
        let total_time = segments.iter().map(|(_, d)| d).sum();
        Ok(Self { segments, total_time })
    }

    /// One segment of length `t`.
    pub fn constant(h: HamiltonianSpec, t: f64) -> Result<Self> {
        Self::new(vec![(h, t)])
    }

    pub fn segments(&self) -> &[(HamiltonianSpec, f64)] {
        &self.segments
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn dim(&self) -> usize {
        self.segments[0].0.dim()
    }

    /// Segments covering `[0, t]`, with the last one shortened. `None` for `t = 0`.
    pub fn truncated(&self, t: f64) -> Result<Option<Self>> {
        if t < 0.0 || t > self.total_time + TIME_TOL {
            return Err(invalid("t", format!("{t} outside [0, {}]", self.total_time)));
        }
        let mut out = Vec::new();
        let mut remaining = t;
        for (h, dur) in &self.segments {
            if remaining <= 0.0 {
                break;
            }
            let d = dur.min(remaining);
            if d > 0.0 {
                out.push((h.clone(), d));
            }
            remaining -= d;
            if remaining <= TIME_TOL {
                break;
            }
        }
        if out.is_empty() {
            return Ok(None);
        }
        Self::new(out).map(Some)
    }
}

/// `exp(−iθtĤ)|ψ⟩` through the eigendecomposition of `Ĥ`.
pub fn evolve_multiplicative(state: &StateVector, h: &HamiltonianSpec, theta: f64, t: f64) -> Result<StateVector> {
    check_dim(h.dim(), state.dim())?;
    if t < 0.0 {
        return Err(invalid("t", format!("evolution time must be >= 0, got {t}")));
    }
    let scale = theta * t;
    if scale == 0.0 {
        return Ok(state.clone());
    }
    let amps = h.spectral_apply(state.amplitudes(), |e| C64::from_polar(1.0, -scale * e))?;
    Ok(StateVector::from_unitary_image(amps, state.num_spins()))
}

/// Applies each segment's `exp(−iθ·dur_j·H_j)` in order.
pub fn evolve_piecewise(state: &StateVector, schedule: &PiecewiseSchedule, theta: f64) -> Result<StateVector> {
    check_dim(schedule.dim(), state.dim())?;
    let mut out = state.clone();
    for (h, dur) in schedule.segments() {
        out = evolve_multiplicative(&out, h, theta, *dur)?;
    }
    Ok(out)
}

/// 2×2 unitary as `[[u00, u01], [u10, u11]]` acting on `(|0⟩, |1⟩)`.
pub type SpinUnitary = [[C64; 2]; 2];

/// `exp(−i(angle/2)(cos φ σx + sin φ σy))`.
pub fn rotation_matrix(angle: f64, axis_phase: f64) -> SpinUnitary {
    let c = C64::new((angle / 2.0).cos(), 0.0);
    let s = (angle / 2.0).sin();
    let minus_i_s = C64::new(0.0, -s);
    [
        [c, minus_i_s * C64::from_polar(1.0, -axis_phase)],
        [minus_i_s * C64::from_polar(1.0, axis_phase), c],
    ]
}

/// Applies `u` to one spin (spin 0 is the most significant bit).
pub fn apply_single_spin(state: &StateVector, spin: usize, u: &SpinUnitary) -> Result<StateVector> {
    let n = state.num_spins();
    if spin >= n {
        return Err(invalid("spin", format!("{spin} out of range for {n} spins")));
    }
    let mut amps = state.amplitudes().to_vec();
    apply_in_place(&mut amps, n, spin, u);
    Ok(StateVector::from_unitary_image(amps, n))
}

fn apply_in_place(amps: &mut [C64], n: usize, spin: usize, u: &SpinUnitary) {
    let bit = 1usize << (n - 1 - spin);
    for i in 0..amps.len() {
        if i & bit == 0 {
            let j = i | bit;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = u[0][0] * a0 + u[0][1] * a1;
            amps[j] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

/// Same rotation on every spin.
pub fn apply_collective_rotation(state: &StateVector, angle: f64, axis_phase: f64) -> StateVector {
    if angle == 0.0 {
        return state.clone();
    }
    let u = rotation_matrix(angle, axis_phase);
    let n = state.num_spins();
    let mut amps = state.amplitudes().to_vec();
    for spin in 0..n {
        apply_in_place(&mut amps, n, spin, &u);
    }
    StateVector::from_unitary_image(amps, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn plus() -> StateVector {
        StateVector::from_real(&[1.0, 1.0]).unwrap()
    }

    #[test]
    fn zero_theta_is_identity() {
        let h = HamiltonianSpec::single_z(1.3);
        let s = plus();
        assert_eq!(evolve_multiplicative(&s, &h, 0.0, 2.0).unwrap(), s);
        assert_eq!(evolve_multiplicative(&s, &h, 0.4, 0.0).unwrap(), s);
    }

    #[test]
    fn eigenstate_picks_up_phase() {
        let h = HamiltonianSpec::single_z(1.0);
        let zero = StateVector::basis(1, 0).unwrap();
        let (theta, t) = (0.7, 1.9);
        let out = evolve_multiplicative(&zero, &h, theta, t).unwrap();
        let expected = C64::from_polar(1.0, -theta * t / 2.0);
        assert!((out.amplitudes()[0] - expected).norm() < 1e-15);
        assert_eq!(out.amplitudes()[1], C64::new(0.0, 0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let h = HamiltonianSpec::collective_z(2, 1.0).unwrap();
        assert!(evolve_multiplicative(&plus(), &h, 1.0, 1.0).is_err());
    }

    #[test]
    fn half_pi_pulse_on_zero() {
        let zero = StateVector::basis(1, 0).unwrap();
        let out = apply_collective_rotation(&zero, PI / 2.0, 0.0);
        assert!((out.amplitudes()[0] - C64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        assert!((out.amplitudes()[1] - C64::new(0.0, -FRAC_1_SQRT_2)).norm() < 1e-12);
    }

    #[test]
    fn full_turn_is_minus_one_per_spin() {
        let s = crate::qcore::tensor(&[plus(), StateVector::from_real(&[0.3, -0.9]).unwrap()]).unwrap();
        let out = apply_collective_rotation(&s, 2.0 * PI, 0.8);
        // (−1)² for two spins
        for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((s.fidelity(&out).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schedule_validation_and_truncation() {
        let h = HamiltonianSpec::single_z(1.0);
        assert!(PiecewiseSchedule::new(vec![]).is_err());
        assert!(PiecewiseSchedule::new(vec![(h.clone(), 0.0)]).is_err());
        let s = PiecewiseSchedule::new(vec![(h.clone(), 1.0), (h.clone(), 2.0)]).unwrap();
        assert_eq!(s.total_time(), 3.0);
        let tr = s.truncated(1.5).unwrap().unwrap();
        assert_eq!(tr.segments().len(), 2);
        assert!((tr.total_time() - 1.5).abs() < 1e-15);
        assert!(s.truncated(0.0).unwrap().is_none());
        assert!(s.truncated(3.5).is_err());
    }

    #[test]
    fn split_segments_match_single_segment() {
        let h = HamiltonianSpec::collective_axis(2, 0.9, [0.3, -0.4, 0.8]).unwrap();
        let s = crate::qcore::tensor(&[plus(), StateVector::from_real(&[0.6, 0.8]).unwrap()]).unwrap();
        let one = PiecewiseSchedule::constant(h.clone(), 1.4).unwrap();
        let two = PiecewiseSchedule::new(vec![(h.clone(), 0.7), (h.clone(), 0.7)]).unwrap();
        let a = evolve_piecewise(&s, &one, 0.6).unwrap();
        let b = evolve_piecewise(&s, &two, 0.6).unwrap();
        let c = evolve_multiplicative(&s, &h, 0.6, 1.4).unwrap();
        for ((x, y), z) in a.amplitudes().iter().zip(b.amplitudes()).zip(c.amplitudes()) {
            assert!((x - y).norm() < 1e-10);
            assert!((x - z).norm() < 1e-12);
        }
    }
}
