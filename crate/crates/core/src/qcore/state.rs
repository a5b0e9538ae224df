use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Norm tolerance for a valid state.
pub const NORM_TOL: f64 = 1e-12;

/// Pure state of `num_spins` spin-1/2 particles.
///
/// Basis index convention: spin 0 is the most significant bit, and a set bit
/// means the spin is in `|1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    num_spins: usize,
}

pub(crate) fn spins_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidLength(len));
    }
    Ok(len.trailing_zeros() as usize)
}

impl StateVector {
    /// Wrap an already normalized amplitude vector.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let num_spins = spins_for_len(amplitudes.len())?;
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amplitudes, num_spins })
    }

    /// Normalize an arbitrary nonzero amplitude vector.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let num_spins = spins_for_len(amplitudes.len())?;
        let n2 = norm_sqr(&amplitudes);
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::ZeroState);
        }
        let inv = 1.0 / n2.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(Self { amplitudes, num_spins })
    }

    /// Normalize real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index⟩` on `num_spins` spins.
    pub fn basis(num_spins: usize, index: usize) -> Result<Self> {
        if num_spins == 0 {
            return Err(crate::error::invalid("num_spins", "must be at least 1"));
        }
        let dim = 1usize << num_spins;
        if index >= dim {
            return Err(crate::error::invalid("index", format!("{index} out of range for {num_spins} spins")));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes, num_spins })
    }

    /// Skips the norm check. Callers guarantee unitarity of whatever produced
    /// the amplitudes.
    pub(crate) fn from_unitary_image(amplitudes: Vec<C64>, num_spins: usize) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_spins);
        Self { amplitudes, num_spins }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    /// Born probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiply by a global phase `e^{iφ}`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let p = C64::from_polar(1.0, phase);
        Self::from_unitary_image(self.amplitudes.iter().map(|a| a * p).collect(), self.num_spins)
    }

    /// Largest componentwise distance after removing the relative global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let ov = self.inner(other)?;
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { C64::new(1.0, 0.0) };
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Kronecker product of the factors, first factor on the most significant spins.
pub fn tensor(factors: &[StateVector]) -> Result<StateVector> {
    let (first, rest) = factors.split_first().ok_or(Error::NoFactors)?;
    let mut amps = first.amplitudes.clone();
    let mut spins = first.num_spins;
    for f in rest {
        let mut next = Vec::with_capacity(amps.len() * f.dim());
        for a in &amps {
            next.extend(f.amplitudes.iter().map(|b| a * b));
        }
        amps = next;
        spins += f.num_spins;
    }
    Ok(StateVector::from_unitary_image(amps, spins))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn basis_product() {
        let z = StateVector::basis(1, 0).unwrap();
        let zz = tensor(&[z.clone(), z]).unwrap();
        assert_eq!(zz.num_spins(), 2);
        assert_eq!(zz.amplitudes(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn uniform_product() {
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let pp = tensor(&[plus.clone(), plus]).unwrap();
        for a in pp.amplitudes() {
            assert!((a - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn empty_tensor_is_an_error() {
        assert_eq!(tensor(&[]), Err(Error::NoFactors));
    }

    #[test]
    fn rejects_bad_lengths_and_norms() {
        assert_eq!(StateVector::new(vec![c(1.0); 3]), Err(Error::InvalidLength(3)));
        assert!(matches!(StateVector::new(vec![c(1.0), c(1.0)]), Err(Error::NotNormalized(_))));
        assert_eq!(StateVector::from_real(&[0.0, 0.0]), Err(Error::ZeroState));
    }

    #[test]
    fn spin_zero_is_most_significant() {
        let one = StateVector::basis(1, 1).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        let s = tensor(&[one, zero]).unwrap();
        assert_eq!(s.probabilities(), vec![0.0, 0.0, 1.0, 0.0]);
    }
}
