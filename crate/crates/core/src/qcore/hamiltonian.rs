use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::state::{check_dim, norm_sqr, spins_for_len, StateVector};
use crate::error::{invalid, Error, Result};

/// Hermiticity tolerance, relative to `max(1, max |H_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest dimension for which a dense matrix is materialized (12 spins).
pub const MAX_DENSE_DIM: usize = 1 << 12;

/// Largest supported register (14 spins).
pub const MAX_SPINS: usize = 14;

#[derive(Clone, Debug)]
enum Repr {
    /// Computational-basis diagonal; eigenvectors are basis states.
    Diagonal(Vec<f64>),
    Dense {
        matrix: DMatrix<C64>,
        /// Ascending.
        eigenvalues: Vec<f64>,
        /// Columns match `eigenvalues`.
        eigenvectors: DMatrix<C64>,
    },
}

/// Hermitian generator `Ĥ` (ħ = 1) with the coupling scale it was built from.
///
/// The stored operator is the complete generator: for `H = γσz/2` the matrix
/// already contains `γ`. `coupling_gamma` is kept so reports can quote it.
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    repr: Repr,
    num_spins: usize,
    coupling_gamma: f64,
    description: String,
}

impl HamiltonianSpec {
    /// Validate and diagonalize a dense Hermitian matrix.
    pub fn from_matrix(matrix: DMatrix<C64>, coupling_gamma: f64, description: impl Into<String>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let num_spins = spins_for_len(rows)?;
        if num_spins > MAX_SPINS || rows > MAX_DENSE_DIM {
            return Err(invalid("matrix", format!("dimension {rows} exceeds the dense limit {MAX_DENSE_DIM}")));
        }
        let deviation = hermitian_deviation(&matrix);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian(deviation));
        }
        let description = description.into();
        let off_diagonal_zero = (0..rows).all(|i| (0..cols).all(|j| i == j || matrix[(i, j)] == C64::new(0.0, 0.0)));
        if off_diagonal_zero {
            let diag = (0..rows).map(|i| matrix[(i, i)].re).collect();
            return Ok(Self { repr: Repr::Diagonal(diag), num_spins, coupling_gamma, description });
        }
        let symmetrized = (&matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
        let (eigenvalues, vectors) = hermitian_eigen(&symmetrized);
        let mut eigenvectors = DMatrix::zeros(rows, rows);
        for (col, v) in vectors.into_iter().enumerate() {
            for (r, a) in fix_phase(v).into_iter().enumerate() {
                eigenvectors[(r, col)] = a;
            }
        }
        Ok(Self {
            repr: Repr::Dense { matrix: symmetrized, eigenvalues, eigenvectors },
            num_spins,
            coupling_gamma,
            description,
        })
    }

    /// Generator diagonal in the computational basis.
    pub fn diagonal(values: Vec<f64>, coupling_gamma: f64, description: impl Into<String>) -> Result<Self> {
        let num_spins = spins_for_len(values.len())?;
        if num_spins > MAX_SPINS {
            return Err(invalid("values", format!("{num_spins} spins exceeds the limit {MAX_SPINS}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values", "non-finite diagonal entry"));
        }
        Ok(Self { repr: Repr::Diagonal(values), num_spins, coupling_gamma, description: description.into() })
    }

    /// `γ Σ_j σz^(j) / 2` on `n` spins; `|0⟩` carries `+γ/2`.
    pub fn collective_z(n: usize, gamma: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        if n > MAX_SPINS {
            return Err(invalid("n", format!("{n} spins exceeds the limit {MAX_SPINS}")));
        }
        let values = (0..1usize << n)
            .map(|k| gamma * (n as f64 / 2.0 - k.count_ones() as f64))
            .collect();
        Self::diagonal(values, gamma, format!("collective gamma*Sz, {n} spins"))
    }

    /// `γ σz / 2` on a single spin.
    pub fn single_z(gamma: f64) -> Self {
        Self::collective_z(1, gamma).expect("one spin is always valid")
    }

    /// `γ Σ_j (n·σ)^(j) / 2` for a real axis `n` (normalized internally).
    pub fn collective_axis(num_spins: usize, gamma: f64, axis: [f64; 3]) -> Result<Self> {
        let len = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(len > 0.0) {
            return Err(invalid("axis", "zero axis"));
        }
        let [x, y, z] = axis.map(|a| a / len);
        let single = [
            [C64::new(z, 0.0), C64::new(x, -y)],
            [C64::new(x, y), C64::new(-z, 0.0)],
        ];
        let m = collective_sum(num_spins, &single, gamma / 2.0)?;
        Self::from_matrix(m, gamma, format!("collective gamma*(n.S) n=({x:.3},{y:.3},{z:.3}), {num_spins} spins"))
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn dim(&self) -> usize {
        1 << self.num_spins
    }

    pub fn coupling_gamma(&self) -> f64 {
        self.coupling_gamma
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.repr, Repr::Diagonal(_))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Diagonal(d) => {
                let mut v = d.clone();
                v.sort_by(f64::total_cmp);
                v
            }
            Repr::Dense { eigenvalues, .. } => eigenvalues.clone(),
        }
    }

    /// `(μ_min, μ_max)`.
    pub fn spectral_range(&self) -> (f64, f64) {
        let ev = self.eigenvalues();
        (ev[0], ev[ev.len() - 1])
    }

    /// Ascending-order eigenpairs with the deterministic selection rule: among
    /// degenerate eigenvalues the lowest index in ascending order wins, and the
    /// largest-magnitude component of every eigenvector is real-positive.
    pub fn eigenpair(&self, rank: usize) -> (f64, Vec<C64>) {
        match &self.repr {
            Repr::Diagonal(d) => {
                let mut order: Vec<usize> = (0..d.len()).collect();
                order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
                let k = order[rank];
                let mut v = vec![C64::new(0.0, 0.0); d.len()];
                v[k] = C64::new(1.0, 0.0);
                (d[k], v)
            }
            Repr::Dense { eigenvalues, eigenvectors, .. } => {
                (eigenvalues[rank], eigenvectors.column(rank).iter().copied().collect())
            }
        }
    }

    /// Dense matrix (diagonal generators are expanded on demand).
    pub fn to_matrix(&self) -> Result<DMatrix<C64>> {
        match &self.repr {
            Repr::Diagonal(d) => {
                if d.len() > MAX_DENSE_DIM {
                    return Err(invalid("hamiltonian", "too large to materialize densely"));
                }
                Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    d.len(),
                    d.iter().map(|&x| C64::new(x, 0.0)),
                )))
            }
            Repr::Dense { matrix, .. } => Ok(matrix.clone()),
        }
    }

    /// `Ĥ|v⟩`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.dim(), v.len())?;
        Ok(match &self.repr {
            Repr::Diagonal(d) => d.iter().zip(v).map(|(e, a)| a * e).collect(),
            Repr::Dense { matrix, .. } => {
                let x = nalgebra::DVector::from_column_slice(v);
                (matrix * x).iter().copied().collect()
            }
        })
    }

    /// `Σ_k f(E_k) |k⟩⟨k|v⟩`.
    pub fn spectral_apply(&self, v: &[C64], f: impl Fn(f64) -> C64) -> Result<Vec<C64>> {
        check_dim(self.dim(), v.len())?;
        Ok(match &self.repr {
            Repr::Diagonal(d) => d.iter().zip(v).map(|(&e, a)| a * f(e)).collect(),
            Repr::Dense { eigenvalues, eigenvectors, .. } => {
                let x = nalgebra::DVector::from_column_slice(v);
                let mut coeffs = eigenvectors.adjoint() * x;
                for (c, &e) in coeffs.iter_mut().zip(eigenvalues) {
                    *c *= f(e);
                }
                (eigenvectors * coeffs).iter().copied().collect()
            }
        })
    }

    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        let hv = self.apply(state.amplitudes())?;
        Ok(super::state::inner(state.amplitudes(), &hv).re)
    }

    /// `⟨H²⟩ − ⟨H⟩²`.
    pub fn variance(&self, state: &StateVector) -> Result<f64> {
        let hv = self.apply(state.amplitudes())?;
        let mean = super::state::inner(state.amplitudes(), &hv).re;
        let second = norm_sqr(&hv);
        Ok((second - mean * mean).max(0.0))
    }
}

/// Max `|H_ij − conj(H_ji)|` relative to `max(1, max |H_ij|)`.
pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let n = m.nrows().min(m.ncols());
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst / scale
}

/// Makes the largest-magnitude component real-positive (first index on ties).
/// Eigenpairs of a Hermitian matrix, ascending. nalgebra's solver gives a
/// starting basis that is only good to about 1e-7 (and occasionally much
/// worse), so it is re-orthonormalized and then polished with cyclic complex
/// Jacobi rotations until the off-diagonal part is at rounding level.
fn hermitian_eigen(h: &DMatrix<C64>) -> (Vec<f64>, Vec<Vec<C64>>) {
    let n = h.nrows();
    let start = h.clone().symmetric_eigen().eigenvectors;
    let mut v = start.qr().q();
    let mut a = v.adjoint() * h * &v;
    let scale = h.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = order.iter().map(|&k| v.column(k).iter().copied().collect()).collect();
    (values, vectors)
}

/// Zeroes `a[(p, q)]` by `a ← G†aG`, `v ← vG`.
fn jacobi_rotate(a: &mut DMatrix<C64>, v: &mut DMatrix<C64>, p: usize, q: usize) {
    let b = a[(p, q)];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let phase = b / mag;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    let n = a.nrows();
    for k in 0..n {
        let (kp, kq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = kp * c - kq * e * s;
        a[(k, q)] = kp * s + kq * e * c;
        let (vp, vq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vp * c - vq * e * s;
        v[(k, q)] = vp * s + vq * e * c;
    }
    for k in 0..n {
        let (pk, qk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = pk * c - qk * e.conj() * s;
        a[(q, k)] = pk * s + qk * e.conj() * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

fn fix_phase(mut v: Vec<C64>) -> Vec<C64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(pivot) = v.iter().find(|z| z.norm() >= max - 1e-12).copied() {
        let p = pivot.conj() / pivot.norm();
        v.iter_mut().for_each(|z| *z *= p);
    }
    v
}

/// `scale · Σ_j op^(j)` as a dense matrix on `num_spins` spins.
pub fn collective_sum(num_spins: usize, op: &[[C64; 2]; 2], scale: f64) -> Result<DMatrix<C64>> {
    if num_spins == 0 {
        return Err(invalid("num_spins", "must be at least 1"));
    }
    let dim = 1usize << num_spins;
    if dim > MAX_DENSE_DIM {
        return Err(invalid("num_spins", format!("{num_spins} spins exceeds the dense limit")));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for spin in 0..num_spins {
        let bit = 1usize << (num_spins - 1 - spin);
        for col in 0..dim {
            let b = usize::from(col & bit != 0);
            for r in 0..2 {
                let row = if r == b { col } else { col ^ bit };
                m[(row, col)] += op[r][b] * scale;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collective_z_levels() {
        let h = HamiltonianSpec::collective_z(2, 1.0).unwrap();
        assert_eq!(h.eigenvalues(), vec![-1.0, 0.0, 0.0, 1.0]);
        let (mu, v) = h.eigenpair(3);
        assert_eq!(mu, 1.0);
        assert_eq!(v[0], C64::new(1.0, 0.0));
        // degenerate 0 level: lowest basis index first
        let (_, v) = h.eigenpair(1);
        assert_eq!(v[1], C64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[
            C64::new(0.0, 0.0), C64::new(1.0, 0.0),
            C64::new(0.0, 0.0), C64::new(0.0, 0.0),
        ]);
        assert!(matches!(HamiltonianSpec::from_matrix(m, 1.0, "bad"), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn sigma_x_eigenvectors_use_phase_convention() {
        let h = HamiltonianSpec::collective_axis(1, 1.0, [1.0, 0.0, 0.0]).unwrap();
        let (lo, vlo) = h.eigenpair(0);
        let (hi, vhi) = h.eigenpair(1);
        assert!((lo + 0.5).abs() < 1e-14 && (hi - 0.5).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((vhi[0] - C64::new(s, 0.0)).norm() < 1e-12);
        assert!((vhi[1] - C64::new(s, 0.0)).norm() < 1e-12);
        assert!((vlo[0] - C64::new(s, 0.0)).norm() < 1e-12);
        assert!((vlo[1] + C64::new(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dense_and_diagonal_agree_on_collective_z() {
        let dense = HamiltonianSpec::collective_axis(3, 0.7, [0.0, 0.0, 1.0]).unwrap();
        let diag = HamiltonianSpec::collective_z(3, 0.7).unwrap();
        // exactly-zero off-diagonals take the diagonal path
        assert!(dense.is_diagonal());
        assert_eq!(dense.eigenvalues(), diag.eigenvalues());
    }

    #[test]
    fn variance_of_plus_state() {
        let h = HamiltonianSpec::single_z(2.0);
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!((h.variance(&plus).unwrap() - 1.0).abs() < 1e-15);
        assert!(h.expectation(&plus).unwrap().abs() < 1e-15);
    }
}
