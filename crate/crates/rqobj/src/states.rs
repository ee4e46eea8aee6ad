//! Random pure states and random density matrices.
//!
//! Pure states come in three flavors: normalized complex-Gaussian vectors
//! (`gauss`), explicit probability-plus-phase construction (`std`), and the
//! first column of a Haar unitary (`ru`). All three are Haar-uniform on the
//! unit sphere; they differ in cost and in which ingredients they reuse.
//!
//! Density matrices come in four: spectral synthesis from a random spectrum
//! and random eigenbasis (`std`), normalized Gram matrices of Gaussian
//! rectangles (`ginibre`), the Bures construction `(I+U)GG†(I+U†)`
//! normalized (`bures`), and partial trace of a larger random pure state
//! (`ptrace`). These induce genuinely different measures — the harness
//! experiments quantify that through entanglement and coherence statistics.
//!
//! Each sampler documents its draw order, so forced-input behavior is fully
//! pinned by the generator contract.

use num_complex::Complex64;

use crate::linalg::{hermitian_eig, reduced_from_pure, ComplexMatrix, Subsystem};
use crate::rng::RandomSource;
use crate::simplex::{sample_rpv, ProbabilityVector, RpvMethod};
use crate::unitary::{ginibre_matrix, sample_ru, RuMethod, UnitaryMatrix};
use crate::{Error, Result};

/// |sum of squared amplitude moduli - 1| must stay below this.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Hermiticity and unit-trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// Internal generators must produce matrices needing at most this much
/// symmetrization; more indicates a broken construction, not noisy input.
const INTERNAL_HERMITICITY_BOUND: f64 = 1e-13;

/// A unit-norm complex amplitude vector describing a pure quantum state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn try_new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let deviation = (amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs();
        if deviation > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(StateVector { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// The rank-one density matrix |psi><psi|.
    pub fn projector(&self) -> DensityMatrix {
        let m = ComplexMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix::from_computed(m).expect("projector of a unit vector is a density matrix")
    }
}

/// A Hermitian unit-trace matrix describing a (possibly mixed) quantum
/// state.
///
/// Construction symmetrizes the input — `rho <- (rho + rho†)/2` — to absorb
/// rounding, rejecting anything whose Hermiticity residual exceeds
/// [`DENSITY_TOL`] outright. Positive semidefiniteness is *not* verified
/// here (it would cost a full eigendecomposition per sample); the samplers
/// in this module are PSD by construction, and [`Self::min_eigenvalue`]
/// exists for explicit checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    rho: ComplexMatrix,
}

impl DensityMatrix {
    pub fn try_new(m: ComplexMatrix) -> Result<Self> {
        Self::validated(m, DENSITY_TOL)
    }

    /// Constructor for matrices this crate computed itself: the permitted
    /// symmetrization is much smaller, so an assembly bug inside a sampler
    /// surfaces as an error instead of being silently absorbed.
    pub(crate) fn from_computed(m: ComplexMatrix) -> Result<Self> {
        Self::validated(m, 2.0 * INTERNAL_HERMITICITY_BOUND)
    }

    fn validated(m: ComplexMatrix, hermiticity_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let residual = m.hermitian_residual()?;
        if residual > hermiticity_tol {
            return Err(Error::NotHermitian { residual });
        }
        let adj = m.adjoint();
        let rho =
            ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| 0.5 * (m[(i, j)] + adj[(i, j)]));
        let trace = rho.trace()?;
        let deviation = (trace.re - 1.0).hypot(trace.im);
        if deviation > DENSITY_TOL {
            return Err(Error::TraceNotOne { deviation });
        }
        Ok(DensityMatrix { rho })
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    /// Tr(rho²), real by Hermiticity; 1/d for maximally mixed, 1 for pure.
    /// Computed as the squared Hilbert–Schmidt norm: Tr(rho²) = sum |rho_jk|²
    /// since rho_kj = conj(rho_jk).
    pub fn purity(&self) -> f64 {
        self.rho.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Smallest eigenvalue, via a full Hermitian eigendecomposition.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (eigenvalues, _) = hermitian_eig(&self.rho)?;
        Ok(eigenvalues[0])
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.rho)?.0)
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;

    fn index(&self, index: (usize, usize)) -> &Complex64 {
        &self.rho[index]
    }
}

/// Method identifiers for [`sample_rsv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RsvMethod {
    /// Normalized vector of complex standard Gaussians.
    Gauss,
    /// Random probabilities and random phases, combined explicitly.
    #[default]
    Std,
    /// First column of a Haar random unitary.
    Ru,
}

impl RsvMethod {
    pub const OPTIONS: &'static str = "gauss, std, ru";
}

impl std::str::FromStr for RsvMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss" => Ok(RsvMethod::Gauss),
            "std" => Ok(RsvMethod::Std),
            "ru" => Ok(RsvMethod::Ru),
            other => Err(Error::UnsupportedMethod {
                object: "rsv",
                given: other.to_string(),
                options: Self::OPTIONS,
            }),
        }
    }
}

impl std::fmt::Display for RsvMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RsvMethod::Gauss => "gauss",
            RsvMethod::Std => "std",
            RsvMethod::Ru => "ru",
        })
    }
}

/// Method identifiers for [`sample_rdm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RdmMethod {
    /// Random spectrum conjugated by a random eigenbasis.
    #[default]
    Std,
    /// Normalized GG† for a square Gaussian G.
    Ginibre,
    /// Normalized (I+U)GG†(I+U†) — the Bures-measure construction.
    Bures,
    /// Reduced state of a larger random pure state.
    Ptrace,
}

impl RdmMethod {
    pub const OPTIONS: &'static str = "std, ginibre, bures, ptrace";
}

impl std::str::FromStr for RdmMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" => Ok(RdmMethod::Std),
            "ginibre" => Ok(RdmMethod::Ginibre),
            "bures" => Ok(RdmMethod::Bures),
            "ptrace" => Ok(RdmMethod::Ptrace),
            other => Err(Error::UnsupportedMethod {
                object: "rdm",
                given: other.to_string(),
                options: Self::OPTIONS,
            }),
        }
    }
}

impl std::fmt::Display for RdmMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RdmMethod::Std => "std",
            RdmMethod::Ginibre => "ginibre",
            RdmMethod::Bures => "bures",
            RdmMethod::Ptrace => "ptrace",
        })
    }
}

// ---------------------------------------------------------------------------
// Pure construction cores (deterministic given their inputs)
// ---------------------------------------------------------------------------

/// Amplitudes `sqrt(p_j) e^{i phase_j}`; the squared moduli reproduce `p`.
pub fn state_from_probabilities_and_phases(
    p: &ProbabilityVector,
    phases: &[f64],
) -> Result<StateVector> {
    if phases.len() != p.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{} probabilities vs {} phases",
            p.dim(),
            phases.len()
        )));
    }
    StateVector::try_new(
        p.components()
            .iter()
            .zip(phases)
            .map(|(&pj, &phi)| Complex64::from_polar(pj.sqrt(), phi))
            .collect(),
    )
}

/// Spectral synthesis `rho = U diag(r) U†`: eigenvalues `r`, eigenvectors
/// the columns of `U`.
pub fn density_from_spectrum(r: &ProbabilityVector, u: &UnitaryMatrix) -> Result<DensityMatrix> {
    if r.dim() != u.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{} eigenvalues vs {}-dimensional basis",
            r.dim(),
            u.dim()
        )));
    }
    let d = r.dim();
    let spectrum = r.components();
    let m = ComplexMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|k| u[(i, k)] * spectrum[k] * u[(j, k)].conj())
            .sum()
    });
    DensityMatrix::from_computed(m)
}

/// Normalized Gram matrix `GG† / Tr(GG†)` of any nonzero rectangle `G`.
pub fn density_from_gram(g: &ComplexMatrix) -> Result<DensityMatrix> {
    let gram = g.mul(&g.adjoint())?;
    let trace = gram.trace()?.re;
    if trace.is_nan() || trace <= 0.0 {
        return Err(Error::DegenerateInput(
            "Gram matrix has zero trace; cannot normalize".into(),
        ));
    }
    DensityMatrix::from_computed(gram.scaled(Complex64::new(1.0 / trace, 0.0)))
}

/// The Bures construction `(I+U) GG† (I+U†)`, normalized to unit trace.
///
/// With `U = I` this reduces bit-for-bit to [`density_from_gram`] on the
/// same `G`: the factor `I+I = 2I` scales the Gram matrix and its trace by
/// exactly 4, which cancels without rounding.
pub fn density_from_bures_factors(g: &ComplexMatrix, u: &UnitaryMatrix) -> Result<DensityMatrix> {
    if g.rows() != u.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{}-row factor vs {}-dimensional unitary",
            g.rows(),
            u.dim()
        )));
    }
    let shifted = ComplexMatrix::identity(u.dim()).add(u.matrix())?;
    density_from_gram(&shifted.mul(g)?)
}

/// Reduced state of a pure bipartite vector: trace out the second factor of
/// `C^{d_a} ⊗ C^{d_b}` (amplitudes indexed row-major, `k = j_a d_b + j_b`).
pub fn density_from_pure_reduction(
    psi: &StateVector,
    d_a: usize,
    d_b: usize,
) -> Result<DensityMatrix> {
    DensityMatrix::from_computed(reduced_from_pure(psi.amplitudes(), d_a, d_b, Subsystem::B)?)
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// A Haar-uniform pure state from `2d` Gaussian draws (per amplitude: real
/// part, then imaginary part), normalized.
pub fn rsv_gauss(source: &mut RandomSource, d: usize) -> Result<StateVector> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let draws = source.sample_gaussian(2 * d);
    let norm = draws.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::DegenerateInput(
            "all Gaussian draws are zero; cannot normalize".into(),
        ));
    }
    StateVector::try_new(
        (0..d)
            .map(|j| Complex64::new(draws[2 * j] / norm, draws[2 * j + 1] / norm))
            .collect(),
    )
}

/// A pure state with explicitly sampled probabilities and phases.
///
/// Draw order: a probability vector via [`sample_rpv`] with `pv_method`,
/// then `d` phases uniform on `[0, 2π)`.
pub fn rsv_std(source: &mut RandomSource, d: usize, pv_method: RpvMethod) -> Result<StateVector> {
    let p = sample_rpv(source, d, pv_method)?;
    let phases = source.sample_uniform(d, 0.0, std::f64::consts::TAU)?;
    state_from_probabilities_and_phases(&p, &phases)
}

/// The first column of a Haar random unitary sampled by `ru_method`.
pub fn rsv_ru(source: &mut RandomSource, d: usize, ru_method: RuMethod) -> Result<StateVector> {
    let u = sample_ru(source, d, ru_method)?;
    StateVector::try_new(u.column(0))
}

/// Samples a random pure state by the chosen method, using each method's
/// default ingredients (`std` builds its probabilities with
/// [`RpvMethod::Zhsl`]; `ru` takes its unitary from [`RuMethod::Gso`]).
pub fn sample_rsv(source: &mut RandomSource, d: usize, method: RsvMethod) -> Result<StateVector> {
    match method {
        RsvMethod::Gauss => rsv_gauss(source, d),
        RsvMethod::Std => rsv_std(source, d, RpvMethod::default()),
        RsvMethod::Ru => rsv_ru(source, d, RuMethod::default()),
    }
}

/// Spectral-synthesis density matrix: a random spectrum conjugated by a
/// random eigenbasis.
///
/// Draw order: the spectrum via [`sample_rpv`] with `pv_method`, then the
/// basis via [`sample_ru`] with `ru_method`. The sampled spectrum is exactly
/// the eigenvalue list of the result (up to eigensolver tolerance).
pub fn rdm_std(
    source: &mut RandomSource,
    d: usize,
    pv_method: RpvMethod,
    ru_method: RuMethod,
) -> Result<DensityMatrix> {
    let r = sample_rpv(source, d, pv_method)?;
    let u = sample_ru(source, d, ru_method)?;
    density_from_spectrum(&r, &u)
}

/// Hilbert–Schmidt-measure density matrix: `GG† / Tr(GG†)` for a square
/// Gaussian `G` (see [`ginibre_matrix`] for the draw order).
pub fn rdm_ginibre(source: &mut RandomSource, d: usize) -> Result<DensityMatrix> {
    density_from_gram(&ginibre_matrix(source, d, d)?)
}

/// Bures-measure density matrix: `(I+U)GG†(I+U†)`, normalized.
///
/// Draw order: the Gaussian factor `G` first, then the unitary `U` via
/// `ru_method`.
pub fn rdm_bures(
    source: &mut RandomSource,
    d: usize,
    ru_method: RuMethod,
) -> Result<DensityMatrix> {
    let g = ginibre_matrix(source, d, d)?;
    let u = sample_ru(source, d, ru_method)?;
    density_from_bures_factors(&g, &u)
}

/// Reduced-state density matrix: sample a pure state on `C^d ⊗
/// C^{ancilla}`, trace out the ancilla.
///
/// `ancilla_dim` defaults to `d` (a square bipartition, which makes the
/// induced measure coincide with [`rdm_ginibre`]); the pure state is drawn
/// by `rsv_method` in dimension `d * ancilla_dim`.
pub fn rdm_ptrace(
    source: &mut RandomSource,
    d: usize,
    ancilla_dim: Option<usize>,
    rsv_method: RsvMethod,
) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let ancilla = ancilla_dim.unwrap_or(d);
    if ancilla == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let psi = sample_rsv(source, d * ancilla, rsv_method)?;
    density_from_pure_reduction(&psi, d, ancilla)
}

/// Samples a random density matrix by the chosen method, using each
/// method's default ingredients (`std` uses `zhsl` + `gso`; `bures` uses
/// `gso`; `ptrace` uses a square bipartition and the `std` pure-state
/// sampler).
pub fn sample_rdm(source: &mut RandomSource, d: usize, method: RdmMethod) -> Result<DensityMatrix> {
    match method {
        RdmMethod::Std => rdm_std(source, d, RpvMethod::default(), RuMethod::default()),
        RdmMethod::Ginibre => rdm_ginibre(source, d),
        RdmMethod::Bures => rdm_bures(source, d, RuMethod::default()),
        RdmMethod::Ptrace => rdm_ptrace(source, d, None, RsvMethod::default()),
    }
}
