//! Dense statevector algebra: states, Hermitian generators and exact unitary
//! evolution. All values are immutable once built.

mod evolution;
mod hamiltonian;
mod state;

pub use evolution::{
    apply_collective_rotation, apply_single_spin, evolve_multiplicative, evolve_piecewise, rotation_matrix,
    PiecewiseSchedule, SpinUnitary, TIME_TOL,
};
pub use hamiltonian::{collective_sum, hermitian_deviation, HamiltonianSpec, HERMITIAN_TOL, MAX_DENSE_DIM, MAX_SPINS};
pub use state::{tensor, StateVector, NORM_TOL};

pub(crate) use state::{check_dim, inner, norm_sqr};
