//! Matrix kernels: the dense complex matrix type, a cyclic-Jacobi Hermitian
//! eigensolver, eigenphase extraction for unitaries, and the bipartite
//! operations (partial trace, partial transpose).

mod bipartite;
mod eig;
mod matrix;

pub(crate) use bipartite::reduced_from_pure;
pub use bipartite::{partial_trace, partial_transpose, Subsystem};
pub use eig::{hermitian_eig, unitary_eigenphases, HERMITICITY_TOL};
pub use matrix::{determinant, hs_norm, ComplexMatrix};
