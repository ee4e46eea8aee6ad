//! Partial trace and partial transpose over a fixed bipartition.
//!
//! A dimension-`d_a * d_b` matrix is addressed by composite indices
//! `k = j_a * d_b + j_b` (row-major, subsystem A slow, B fast); every
//! bipartite operation in the crate uses this one convention.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Which tensor factor an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

fn check_bipartition(dim: usize, d_a: usize, d_b: usize) -> Result<()> {
    if d_a == 0 || d_b == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if d_a * d_b != dim {
        return Err(Error::ShapeMismatch(format!(
            "bipartition {d_a}x{d_b} does not factor dimension {dim}"
        )));
    }
    Ok(())
}

pub(crate) fn partial_trace_matrix(
    m: &ComplexMatrix,
    d_a: usize,
    d_b: usize,
    traced: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartition(m.rows(), d_a, d_b)?;
    match traced {
        Subsystem::B => Ok(ComplexMatrix::from_fn(d_a, d_a, |ja, ka| {
            (0..d_b).map(|m_| m[(ja * d_b + m_, ka * d_b + m_)]).sum()
        })),
        Subsystem::A => Ok(ComplexMatrix::from_fn(d_b, d_b, |jb, kb| {
            (0..d_a).map(|m_| m[(m_ * d_b + jb, m_ * d_b + kb)]).sum()
        })),
    }
}

/// Traces out one subsystem of a bipartite density matrix.
///
/// The result is again a density matrix: Hermiticity and unit trace survive
/// the contraction exactly, and positivity is inherited.
pub fn partial_trace(
    rho: &DensityMatrix,
    d_a: usize,
    d_b: usize,
    traced: Subsystem,
) -> Result<DensityMatrix> {
    DensityMatrix::try_new(partial_trace_matrix(rho.matrix(), d_a, d_b, traced)?)
}

/// Transposes one tensor factor of a bipartite density matrix.
///
/// Hermiticity and unit trace are preserved but positivity generally is not
/// — that loss is exactly what the PPT entanglement test looks for — so the
/// result is returned as a plain matrix.
pub fn partial_transpose(
    rho: &DensityMatrix,
    d_a: usize,
    d_b: usize,
    transposed: Subsystem,
) -> Result<ComplexMatrix> {
    let m = rho.matrix();
    check_bipartition(m.rows(), d_a, d_b)?;
    let d = m.rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for ja in 0..d_a {
        for jb in 0..d_b {
            for ka in 0..d_a {
                for kb in 0..d_b {
                    let (row_src, col_src) = match transposed {
                        Subsystem::B => (ja * d_b + kb, ka * d_b + jb),
                        Subsystem::A => (ka * d_b + jb, ja * d_b + kb),
                    };
                    out[(ja * d_b + jb, ka * d_b + kb)] = m[(row_src, col_src)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced density matrix of a bipartite pure state, computed directly from
/// the amplitudes without materializing the full projector.
pub(crate) fn reduced_from_pure(
    amps: &[Complex64],
    d_a: usize,
    d_b: usize,
    traced: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartition(amps.len(), d_a, d_b)?;
    match traced {
        Subsystem::B => Ok(ComplexMatrix::from_fn(d_a, d_a, |ja, ka| {
            (0..d_b)
                .map(|m_| amps[ja * d_b + m_] * amps[ka * d_b + m_].conj())
                .sum()
        })),
        Subsystem::A => Ok(ComplexMatrix::from_fn(d_b, d_b, |jb, kb| {
            (0..d_a)
                .map(|m_| amps[m_ * d_b + jb] * amps[m_ * d_b + kb].conj())
                .sum()
        })),
    }
}
