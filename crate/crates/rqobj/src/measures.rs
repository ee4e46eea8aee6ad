//! Functionals on states: fidelity, entropy, coherence, and the positive
//! partial transpose test.
//!
//! Everything here is a pure function of its inputs. Entropies are in bits
//! (base-2 logarithms), matching the `log2 d` normalizations used by the
//! scaling experiments in [`crate::harness`].

use crate::linalg::{hermitian_eig, partial_transpose, Subsystem};
use crate::states::{DensityMatrix, StateVector};
use crate::{Error, Result};

/// Eigenvalues this far below zero still count as zero; anything lower is a
/// genuine positivity violation. Shared with the PPT classification so the
/// two notions of "positive" agree.
pub const PSD_TOL: f64 = 1e-10;
/// Relative-entropy coherence may round this far below zero before it is an
/// error.
const COHERENCE_CLAMP: f64 = -1e-9;

/// Squared overlap |<psi|phi>|² of two pure states, clamped to [0, 1].
pub fn fidelity_pure(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.dim() != phi.dim() {
        return Err(Error::ShapeMismatch(format!(
            "fidelity of a {}-dimensional state with a {}-dimensional one",
            psi.dim(),
            phi.dim()
        )));
    }
    let overlap: num_complex::Complex64 = psi
        .amplitudes()
        .iter()
        .zip(phi.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum();
    // Unit vectors give |<psi|phi>| <= 1 up to rounding.
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

/// Shannon entropy (bits) of a spectrum with the 0·log 0 := 0 convention;
/// inputs within [`PSD_TOL`] below zero are clamped, lower ones rejected.
fn spectrum_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut entropy = 0.0;
    for &lambda in eigenvalues {
        if lambda < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: lambda,
            });
        }
        if lambda > 0.0 {
            entropy -= lambda * lambda.log2();
        }
    }
    // -0.0 from rounding normalizes to 0.
    Ok(entropy.max(0.0))
}

/// Von Neumann entropy S(rho) = -Tr(rho log2 rho), in bits.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.eigenvalues()?)
}

/// L1-norm coherence: the sum of the magnitudes of all off-diagonal
/// entries. Zero exactly for diagonal states; at most d - 1.
pub fn coherence_l1(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut sum = 0.0;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                sum += rho[(j, k)].norm();
            }
        }
    }
    sum
}

/// Relative entropy of coherence: S(diag(rho)) - S(rho), in bits.
///
/// Erasing off-diagonal entries can only increase entropy (the diagonal is
/// majorized by the spectrum), so the difference is nonnegative up to
/// rounding; tiny negatives are clamped and anything below the clamp window
/// is reported as a numerical failure.
pub fn coherence_re(rho: &DensityMatrix) -> Result<f64> {
    let diagonal: Vec<f64> = (0..rho.dim()).map(|j| rho[(j, j)].re).collect();
    let value = spectrum_entropy(&diagonal)? - vn_entropy(rho)?;
    if value >= 0.0 {
        Ok(value)
    } else if value >= COHERENCE_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NumericalFailure(format!(
            "relative-entropy coherence {value:e} is negative beyond rounding"
        )))
    }
}

/// Outcome of the positive-partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptOutcome {
    /// True iff the partial transpose has no eigenvalue below -[`PSD_TOL`].
    pub ppt: bool,
    /// Smallest eigenvalue of the partially transposed matrix — the
    /// diagnostic the decay-curve experiments bin without recomputing.
    pub min_eigenvalue: f64,
}

/// Tests whether `rho` on `C^{d_a} ⊗ C^{d_b}` stays positive under
/// transposition of the second subsystem (a necessary condition for
/// separability; failure certifies entanglement).
pub fn is_ppt(rho: &DensityMatrix, d_a: usize, d_b: usize) -> Result<PptOutcome> {
    let transposed = partial_transpose(rho, d_a, d_b, Subsystem::B)?;
    let (eigenvalues, _) = hermitian_eig(&transposed)?;
    let min_eigenvalue = eigenvalues[0];
    Ok(PptOutcome {
        ppt: min_eigenvalue >= -PSD_TOL,
        min_eigenvalue,
    })
}
