//! Hermitian eigendecomposition by cyclic Jacobi rotations, and unitary
//! eigenphase extraction built on top of it.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::unitary::UnitaryMatrix;
use crate::{Error, Result};

/// Inputs to [`hermitian_eig`] must satisfy max |a - a^H| below this.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Off-diagonal entries count as annihilated below this multiple of the
/// largest input modulus.
const CONVERGENCE_FACTOR: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues of the Hermitian part closer than this are treated as one
/// degenerate cluster during eigenphase extraction.
const PHASE_CLUSTER_GAP: f64 = 1e-8;

/// Full eigendecomposition of a Hermitian matrix.
///
/// Cyclic Jacobi: sweeps annihilate each off-diagonal entry in turn with a
/// unitary plane rotation, converging quadratically once the matrix is
/// nearly diagonal. Returns eigenvalues in ascending order and the matching
/// orthonormal eigenvectors as the columns of a unitary matrix.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<(Vec<f64>, UnitaryMatrix)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let residual = a.hermitian_residual()?;
    if residual > HERMITICITY_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let d = a.rows();
    let scale = a.max_abs();
    let mut v = ComplexMatrix::identity(d);
    if scale == 0.0 {
        return Ok((vec![0.0; d], UnitaryMatrix::try_new(v)?));
    }
    let threshold = CONVERGENCE_FACTOR * scale;

    let mut w = a.clone();
    // Never trust the lower triangle to stay the exact conjugate of the
    // upper one through rounding: work from the upper triangle and keep the
    // matrix Hermitian by construction after every rotation.
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off_max = 0.0f64;
        for p in 0..d {
            for q in p + 1..d {
                off_max = off_max.max(w[(p, q)].norm());
            }
        }
        if off_max < threshold {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = w[(p, q)];
                let b = apq.norm();
                if b < threshold {
                    continue;
                }
                rotate(&mut w, &mut v, p, q, apq, b);
            }
        }
    }
    if !converged {
        // One final check: the last sweep may have finished the job.
        let mut off_max = 0.0f64;
        for p in 0..d {
            for q in p + 1..d {
                off_max = off_max.max(w[(p, q)].norm());
            }
        }
        if off_max >= threshold {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let eigenvalues: Vec<f64> = (0..d).map(|i| w[(i, i)].re).collect();
    order.sort_by(|&i, &j| {
        eigenvalues[i]
            .partial_cmp(&eigenvalues[j])
            .expect("eigenvalues are never NaN")
    });
    let sorted_values: Vec<f64> = order.iter().map(|&i| eigenvalues[i]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(d, d, |i, j| v[(i, order[j])]);
    Ok((sorted_values, UnitaryMatrix::try_new(sorted_vectors)?))
}

/// One Jacobi rotation annihilating the (p, q) entry.
///
/// The complex entry is reduced to the real case by folding its phase
/// w = a_pq/|a_pq| into the rotation: with J_pp = c, J_pq = s,
/// J_qp = -conj(w) s, J_qq = conj(w) c, the transformed (p, q) entry is
/// exactly the classic symmetric-Jacobi expression in |a_pq|, so the usual
/// stable tangent formula applies.
fn rotate(
    w: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    apq: Complex64,
    b: f64,
) {
    let d = w.rows();
    let phase = apq / b;
    let alpha = w[(p, p)].re;
    let gamma = w[(q, q)].re;
    let theta = (gamma - alpha) / (2.0 * b);
    // Smaller-magnitude root of t^2 + 2 theta t - 1 = 0.
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ws = phase * s; // w * s
    let wc = phase * c; // w * c

    // Columns p and q of W (i.e. W <- W J).
    for r in 0..d {
        let wrp = w[(r, p)];
        let wrq = w[(r, q)];
        w[(r, p)] = c * wrp - ws.conj() * wrq;
        w[(r, q)] = s * wrp + wc.conj() * wrq;
    }
    // Rows p and q (i.e. W <- J^H W).
    for r in 0..d {
        let wpr = w[(p, r)];
        let wqr = w[(q, r)];
        w[(p, r)] = c * wpr - ws * wqr;
        w[(q, r)] = s * wpr + wc * wqr;
    }
    // The rotation zeroes (p, q) analytically; enforce it exactly along with
    // the Hermitian structure rounding may have smeared.
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);

    // Accumulate eigenvectors: V <- V J.
    for r in 0..d {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - ws.conj() * vrq;
        v[(r, q)] = s * vrp + wc.conj() * vrq;
    }
}

/// Eigenphases of a unitary matrix, ascending in [-pi, pi).
///
/// A unitary is normal, so it shares eigenvectors with its commuting
/// Hermitian and anti-Hermitian parts H = (U + U^H)/2 and K = (U - U^H)/(2i),
/// whose eigenvalues are cos(theta) and sin(theta). H alone cannot separate
/// phases theta and -theta; within each near-degenerate cluster of H the
/// eigenbasis is rotated to diagonalize K restricted to the cluster, after
/// which theta = atan2(<K>, <H>) per eigenvector is well defined.
pub fn unitary_eigenphases(u: &UnitaryMatrix) -> Result<Vec<f64>> {
    let m = u.matrix();
    let d = m.rows();
    let adj = m.adjoint();
    let h = m.add(&adj)?.scaled(Complex64::new(0.5, 0.0));
    let k = m.sub(&adj)?.scaled(Complex64::new(0.0, -0.5));

    let (hvals, hvecs) = hermitian_eig(&h)?;
    let mut basis = hvecs.into_matrix();

    // Re-diagonalize K inside each cluster of (near-)equal H eigenvalues.
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && hvals[end] - hvals[end - 1] < PHASE_CLUSTER_GAP {
            end += 1;
        }
        let width = end - start;
        if width > 1 {
            let k_block = ComplexMatrix::from_fn(width, width, |a, bj| {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    for j in 0..d {
                        acc += basis[(i, start + a)].conj() * k[(i, j)] * basis[(j, start + bj)];
                    }
                }
                acc
            });
            let (_, s) = hermitian_eig(&k_block)?;
            let s = s.into_matrix();
            let rotated = ComplexMatrix::from_fn(d, width, |i, b| {
                (0..width).map(|a| basis[(i, start + a)] * s[(a, b)]).sum()
            });
            for i in 0..d {
                for b in 0..width {
                    basis[(i, start + b)] = rotated[(i, b)];
                }
            }
        }
        start = end;
    }

    let mut phases: Vec<f64> = (0..d)
        .map(|j| {
            let col = basis.column(j);
            let cos = expectation(&h, &col).re;
            let sin = expectation(&k, &col).re;
            let mut theta = sin.atan2(cos);
            // atan2 returns (-pi, pi]; fold the single boundary value so the
            // reported range is [-pi, pi).
            if theta >= std::f64::consts::PI {
                theta -= 2.0 * std::f64::consts::PI;
            }
            theta
        })
        .collect();
    phases.sort_by(|a, b| a.partial_cmp(b).expect("phases are never NaN"));
    Ok(phases)
}

fn expectation(m: &ComplexMatrix, v: &[Complex64]) -> Complex64 {
    let d = v.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc
}
