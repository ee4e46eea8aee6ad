//! Haar-distributed random unitary matrices by three constructions.
//!
//! Two routes factor a Ginibre matrix (independent complex standard-Gaussian
//! entries): modified Gram–Schmidt (`gso`, the default) and Householder QR
//! with a diagonal phase correction (`hhr`). The third (`hurwitz`) composes
//! elementary two-subspace rotations with angle distributions calibrated so
//! the composition is Haar, consuming draws directly without any matrix
//! factorization.
//!
//! All three agree statistically; they differ in draw consumption and in
//! numerical character, which is exactly what the cross-method experiments
//! in [`crate::harness`] are for.

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;
use crate::rng::RandomSource;
use crate::{Error, Result};

/// Maximum allowed max-norm of `U†U - I` for a valid unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// A column whose residual norm falls below this during orthogonalization is
/// treated as linearly dependent on its predecessors.
const RANK_TOL: f64 = 1e-13;

/// A square complex matrix validated to satisfy `max|U†U - I| <=`
/// [`UNITARITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    u: ComplexMatrix,
}

impl UnitaryMatrix {
    pub fn try_new(u: ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare {
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        if u.rows() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let residual = u
            .adjoint()
            .mul(&u)?
            .max_abs_diff(&ComplexMatrix::identity(u.rows()))?;
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(UnitaryMatrix { u })
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.u
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.u.column(j)
    }
}

impl std::ops::Index<(usize, usize)> for UnitaryMatrix {
    type Output = Complex64;

    fn index(&self, index: (usize, usize)) -> &Complex64 {
        &self.u[index]
    }
}

/// Method identifiers for [`sample_ru`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuMethod {
    /// Modified Gram–Schmidt orthogonalization of a Ginibre matrix.
    #[default]
    Gso,
    /// Householder QR of a Ginibre matrix, phase-corrected.
    Hhr,
    /// Composition of elementary rotations with calibrated angles.
    Hurwitz,
}

impl RuMethod {
    pub const OPTIONS: &'static str = "gso, hhr, hurwitz";
}

impl std::str::FromStr for RuMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gso" => Ok(RuMethod::Gso),
            "hhr" => Ok(RuMethod::Hhr),
            "hurwitz" => Ok(RuMethod::Hurwitz),
            other => Err(Error::UnsupportedMethod {
                object: "ru",
                given: other.to_string(),
                options: Self::OPTIONS,
            }),
        }
    }
}

impl std::fmt::Display for RuMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RuMethod::Gso => "gso",
            RuMethod::Hhr => "hhr",
            RuMethod::Hurwitz => "hurwitz",
        })
    }
}

/// A `rows x cols` matrix of independent complex standard-Gaussian entries.
///
/// Draw consumption: `2 * rows * cols` Gaussian draws in one call, laid out
/// row-major over entries with the real part before the imaginary part of
/// each entry.
pub fn ginibre_matrix(
    source: &mut RandomSource,
    rows: usize,
    cols: usize,
) -> Result<ComplexMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let draws = source.sample_gaussian(2 * rows * cols);
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        let k = 2 * (i * cols + j);
        Complex64::new(draws[k], draws[k + 1])
    }))
}

/// Orthonormalizes the columns of a square matrix by modified Gram–Schmidt.
///
/// Column `j` of the result lies in the span of columns `0..=j` of the
/// input, and the implicit triangular factor has positive real diagonal (the
/// column norms) — the phase convention under which QR of a Ginibre matrix
/// is Haar-distributed.
pub fn mgs_qr_unitary(g: &ComplexMatrix) -> Result<UnitaryMatrix> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let d = g.rows();
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    // Columns as working vectors; each is reduced against all previously
    // finished columns before normalization (the "modified" update order,
    // which subtracts projections from the running residual rather than the
    // original column).
    let mut q: Vec<Vec<Complex64>> = (0..d).map(|j| g.column(j)).collect();
    for j in 0..d {
        let (done, rest) = q.split_at_mut(j);
        let current = &mut rest[0];
        for finished in done.iter() {
            let overlap: Complex64 = finished
                .iter()
                .zip(current.iter())
                .map(|(qk, v)| qk.conj() * v)
                .sum();
            for (v, qk) in current.iter_mut().zip(finished) {
                *v -= overlap * qk;
            }
        }
        let norm = current.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < RANK_TOL {
            return Err(Error::DegenerateInput(format!(
                "column {j} is linearly dependent on its predecessors (residual norm {norm:e})"
            )));
        }
        for z in current.iter_mut() {
            *z /= norm;
        }
    }
    UnitaryMatrix::try_new(ComplexMatrix::from_fn(d, d, |i, j| q[j][i]))
}

/// Householder QR of a square matrix, reduced to the orthogonal factor.
///
/// If the raw factorization is `g = Q R`, the returned unitary is
/// `Q · diag(R_jj / |R_jj|)`: absorbing the diagonal phases of `R` leaves an
/// implicit triangular factor with positive real diagonal. Without this
/// correction the raw `Q` is *not* Haar-distributed for Ginibre input — the
/// reflector sign choices bias the diagonal phases.
pub fn householder_qr_unitary(g: &ComplexMatrix) -> Result<UnitaryMatrix> {
    let (q, r_diag) = householder_factor(g)?;
    let d = q.rows();
    let corrected = ComplexMatrix::from_fn(d, d, |i, j| {
        let phase = r_diag[j] / r_diag[j].norm();
        q[(i, j)] * phase
    });
    UnitaryMatrix::try_new(corrected)
}

/// The raw (phase-uncorrected) orthogonal factor of the Householder QR.
///
/// This is *not* Haar-distributed for Ginibre input and exists only so
/// statistical tests can demonstrate that the detection machinery catches
/// the bias that [`householder_qr_unitary`]'s phase correction removes.
#[doc(hidden)]
pub fn householder_qr_raw_q(g: &ComplexMatrix) -> Result<UnitaryMatrix> {
    let (q, _) = householder_factor(g)?;
    UnitaryMatrix::try_new(q)
}

/// Shared Householder elimination; returns the accumulated Q and the
/// diagonal of R.
fn householder_factor(g: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let d = g.rows();
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut r = g.clone();
    let mut q = ComplexMatrix::identity(d);
    for k in 0..d {
        let norm_x = (k..d).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x < RANK_TOL {
            return Err(Error::DegenerateInput(format!(
                "column {k} vanishes below the diagonal (norm {norm_x:e})"
            )));
        }
        // Reflect the subcolumn onto alpha * e_k with alpha opposite in
        // phase to the pivot, the numerically safe choice (no cancellation
        // in v's leading entry).
        let pivot = r[(k, k)];
        let pivot_phase = if pivot.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            pivot / pivot.norm()
        };
        let alpha = -pivot_phase * norm_x;
        let mut v: Vec<Complex64> = (k..d).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let v_norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if v_norm_sqr > 0.0 {
            let beta = 2.0 / v_norm_sqr;
            // R <- H R on rows k.., where H = I - beta v v^H.
            for j in k..d {
                let w: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(m, vm)| vm.conj() * r[(k + m, j)])
                    .sum();
                for (m, vm) in v.iter().enumerate() {
                    let correction = beta * w * vm;
                    r[(k + m, j)] -= correction;
                }
            }
            // Q <- Q H on columns k.. (H is Hermitian, so right-multiplying
            // by H accumulates Q = H_1 H_2 ... with g = Q R).
            for i in 0..d {
                let s: Complex64 = v.iter().enumerate().map(|(m, vm)| q[(i, k + m)] * vm).sum();
                for (m, vm) in v.iter().enumerate() {
                    let correction = beta * s * vm.conj();
                    q[(i, k + m)] -= correction;
                }
            }
        }
        // The reflection sends the pivot exactly to alpha; record it rather
        // than trusting the rounded in-place value.
        r[(k, k)] = alpha;
    }
    let r_diag = (0..d).map(|j| r[(j, j)]).collect();
    Ok((q, r_diag))
}

/// A Haar unitary composed from elementary two-subspace rotations.
///
/// The matrix is built recursively: a `(r+1)`-dimensional unitary is a chain
/// of rotations in the planes `(r, r+1), (r-1, r), ..., (1, 2)` — applied in
/// that order — times the `r`-dimensional unitary acting on the leading
/// coordinates, and the whole composition is finally scaled by a global
/// phase. Each plane-`(k, k+1)` rotation is identity except on its 2x2
/// block,
///
/// ```text
/// [  cos(phi) e^{i psi}   sin(phi) e^{i chi} ]
/// [ -sin(phi) e^{-i chi}  cos(phi) e^{-i psi} ]
/// ```
///
/// with `phi = arcsin(xi^{1/(2k)})` for a uniform `xi` — precisely the
/// radial law that makes the chain map a basis vector to a uniformly random
/// point on the complex sphere — and `chi` drawn only for the first-applied
/// rotation of each chain (it is zero elsewhere, where it would be
/// redundant).
///
/// Draw consumption, in order: one uniform draw for the global phase; then
/// for each chain `r = 1..d-1` and each plane index `k = r, r-1, ..., 1`
/// within it: `xi`, then `psi`, then (for `k = r` only) `chi` — all single
/// `u01` draws.
pub fn hurwitz_unitary(source: &mut RandomSource, d: usize) -> Result<UnitaryMatrix> {
    use std::f64::consts::TAU;
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let alpha = TAU * source.next_u01();
    let mut u = ComplexMatrix::identity(d);
    for r in 1..d {
        for k in (1..=r).rev() {
            let xi = source.next_u01();
            let phi = xi.powf(1.0 / (2 * k) as f64).asin();
            let psi = TAU * source.next_u01();
            let chi = if k == r { TAU * source.next_u01() } else { 0.0 };
            let (sin_phi, cos_phi) = phi.sin_cos();
            let a = cos_phi * Complex64::cis(psi);
            let b = sin_phi * Complex64::cis(chi);
            let c = -sin_phi * Complex64::cis(-chi);
            let e = cos_phi * Complex64::cis(-psi);
            // Left-multiply by the rotation: combine rows k-1 and k
            // (0-based) of the accumulated product.
            for col in 0..d {
                let top = u[(k - 1, col)];
                let bottom = u[(k, col)];
                u[(k - 1, col)] = a * top + b * bottom;
                u[(k, col)] = c * top + e * bottom;
            }
        }
    }
    UnitaryMatrix::try_new(u.scaled(Complex64::cis(alpha)))
}

/// Samples a Haar-random `d x d` unitary by the chosen method.
///
/// `gso` and `hhr` first draw a `d x d` Ginibre matrix (see
/// [`ginibre_matrix`] for its draw order) and factor it; `hurwitz` consumes
/// draws directly as documented on [`hurwitz_unitary`].
pub fn sample_ru(source: &mut RandomSource, d: usize, method: RuMethod) -> Result<UnitaryMatrix> {
    match method {
        RuMethod::Gso => mgs_qr_unitary(&ginibre_matrix(source, d, d)?),
        RuMethod::Hhr => householder_qr_unitary(&ginibre_matrix(source, d, d)?),
        RuMethod::Hurwitz => hurwitz_unitary(source, d),
    }
}
