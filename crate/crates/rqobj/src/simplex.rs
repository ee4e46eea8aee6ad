//! Random probability vectors: six ways to sample the standard simplex.
//!
//! Three of the methods (`zhsl`, `devroye`, `kraemer`) sample the *uniform*
//! (flat Dirichlet) distribution on the simplex by entirely different
//! constructions — stick-breaking with calibrated exponents, normalized
//! exponentials, and sorted-uniform spacings — and serve as mutual
//! cross-checks. The other three (`trig`, `norm`, `iid`) are simpler
//! constructions whose outputs concentrate differently; they are kept for
//! comparison studies, with a component shuffle applied where the raw
//! construction is ordered by design.
//!
//! Every method is split into a pure *core* that maps explicit draws to a
//! vector (unit-testable against hand-computed values) and the sampling
//! wrapper [`sample_rpv`] that feeds it from a [`RandomSource`].

use crate::rng::RandomSource;
use crate::{Error, Result};

/// |sum - 1| must stay below this for a valid probability vector.
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;
/// A final component computed as a remainder may round this far below zero
/// before it is treated as a numerical failure rather than clamped.
const REMAINDER_CLAMP: f64 = -1e-14;

/// A discrete probability distribution: nonnegative components summing to
/// one within [`PROBABILITY_SUM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn try_new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        for (index, &value) in p.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let deviation = (p.iter().sum::<f64>() - 1.0).abs();
        if deviation > PROBABILITY_SUM_TOL {
            return Err(Error::ProbabilitySum { deviation });
        }
        Ok(ProbabilityVector { p })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.p
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.p
    }
}

/// Method identifiers for [`sample_rpv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RpvMethod {
    /// Trigonometric parametrization of the sphere, squared.
    Trig,
    /// Nested uniform draws on the shrinking remainder.
    Norm,
    /// Stick-breaking with exponents tuned to make the result uniform.
    #[default]
    Zhsl,
    /// Normalized uniform draws.
    Iid,
    /// Normalized exponential draws (uniform on the simplex).
    Devroye,
    /// Spacings of sorted uniform draws (uniform on the simplex).
    Kraemer,
}

impl RpvMethod {
    pub const OPTIONS: &'static str = "trig, norm, zhsl, iid, devroye, kraemer";

    /// Every method, in option order, for exhaustive sweeps.
    pub const ALL: [RpvMethod; 6] = [
        RpvMethod::Trig,
        RpvMethod::Norm,
        RpvMethod::Zhsl,
        RpvMethod::Iid,
        RpvMethod::Devroye,
        RpvMethod::Kraemer,
    ];

    /// The raw constructions of `trig` and `norm` order their components by
    /// construction; those two get a uniform component shuffle on sampling.
    fn needs_shuffle(self) -> bool {
        matches!(self, RpvMethod::Trig | RpvMethod::Norm)
    }
}

impl std::str::FromStr for RpvMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trig" => Ok(RpvMethod::Trig),
            "norm" => Ok(RpvMethod::Norm),
            "zhsl" => Ok(RpvMethod::Zhsl),
            "iid" => Ok(RpvMethod::Iid),
            "devroye" => Ok(RpvMethod::Devroye),
            "kraemer" => Ok(RpvMethod::Kraemer),
            other => Err(Error::UnsupportedMethod {
                object: "rpv",
                given: other.to_string(),
                options: Self::OPTIONS,
            }),
        }
    }
}

impl std::fmt::Display for RpvMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RpvMethod::Trig => "trig",
            RpvMethod::Norm => "norm",
            RpvMethod::Zhsl => "zhsl",
            RpvMethod::Iid => "iid",
            RpvMethod::Devroye => "devroye",
            RpvMethod::Kraemer => "kraemer",
        })
    }
}

fn check_unit_range(draws: &[f64]) -> Result<()> {
    for &value in draws {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::DrawOutOfRange { value });
        }
    }
    Ok(())
}

fn check_nonnegative(draws: &[f64]) -> Result<()> {
    for &value in draws {
        if value.is_nan() || value < 0.0 {
            return Err(Error::NegativeDraw { value });
        }
    }
    Ok(())
}

/// Clamps a remainder that rounding pushed a hair below zero; anything
/// further negative means the construction itself went wrong.
fn clamp_remainder(value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= REMAINDER_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NumericalFailure(format!(
            "probability remainder {value:e} fell below the rounding allowance"
        )))
    }
}

/// Trigonometric core on `d - 1` unit-interval draws.
///
/// Angles theta_j = arccos(sqrt(r_j)) for j = 1..d-1, with theta_0 = pi/2 so
/// the components exhaust the whole simplex; then
/// p_j = sin^2(theta_{j-1}) * prod_{k=j..d-1} cos^2(theta_k) and
/// p_d = sin^2(theta_{d-1}). The telescoping product makes the sum exactly
/// one up to rounding.
pub fn pv_from_trig_draws(r: &[f64]) -> Result<ProbabilityVector> {
    check_unit_range(r)?;
    let d = r.len() + 1;
    // sin^2(theta_j) = 1 - r_j and cos^2(theta_j) = r_j; no trigonometric
    // calls are needed once squared.
    let mut p = vec![0.0; d];
    // Running product of cos^2 over the tail k = j..d-1.
    let mut tail = 1.0;
    p[d - 1] = if d == 1 { 1.0 } else { 1.0 - r[d - 2] };
    for j in (1..d).rev() {
        tail *= r[j - 1];
        let sin_sq_prev = if j == 1 { 1.0 } else { 1.0 - r[j - 2] };
        p[j - 1] = sin_sq_prev * tail;
    }
    ProbabilityVector::try_new(p)
}

/// Nested-uniform core on `d - 1` unit-interval draws: each component takes
/// a `u_j` fraction of what remains, and the last takes the remainder.
pub fn pv_from_norm_draws(u: &[f64]) -> Result<ProbabilityVector> {
    check_unit_range(u)?;
    let d = u.len() + 1;
    let mut p = vec![0.0; d];
    let mut remaining = 1.0;
    for j in 0..d - 1 {
        p[j] = u[j] * remaining;
        remaining -= p[j];
    }
    p[d - 1] = clamp_remainder(remaining)?;
    ProbabilityVector::try_new(p)
}

/// Stick-breaking core on `d - 1` unit-interval draws with exponents
/// 1/(d-1), 1/(d-2), ..., 1: p_1 = 1 - r_1^{1/(d-1)} and each later
/// p_j = (1 - r_j^{1/(d-j)}) * (remaining mass). The exponents are exactly
/// those that make the output uniform on the simplex.
pub fn pv_from_zhsl_draws(r: &[f64]) -> Result<ProbabilityVector> {
    check_unit_range(r)?;
    let d = r.len() + 1;
    let mut p = vec![0.0; d];
    let mut remaining = 1.0;
    for j in 0..d - 1 {
        let exponent = 1.0 / (d - 1 - j) as f64;
        p[j] = (1.0 - r[j].powf(exponent)) * remaining;
        remaining -= p[j];
    }
    p[d - 1] = clamp_remainder(remaining)?;
    ProbabilityVector::try_new(p)
}

/// Normalization core on `d` nonnegative draws: p_j = r_j / sum(r).
pub fn pv_from_iid_draws(r: &[f64]) -> Result<ProbabilityVector> {
    check_nonnegative(r)?;
    let total: f64 = r.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateInput(
            "all draws are zero; cannot normalize".into(),
        ));
    }
    ProbabilityVector::try_new(r.iter().map(|&x| x / total).collect())
}

/// Normalization core on `d` nonnegative exponential draws. Identical
/// arithmetic to [`pv_from_iid_draws`]; the exponential input distribution
/// is what makes the normalized output uniform on the simplex.
pub fn pv_from_devroye_draws(e: &[f64]) -> Result<ProbabilityVector> {
    check_nonnegative(e)?;
    let total: f64 = e.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateInput(
            "all draws are zero; cannot normalize".into(),
        ));
    }
    ProbabilityVector::try_new(e.iter().map(|&x| x / total).collect())
}

/// Spacings core on `d - 1` unit-interval draws: sort them, pad with 0 and
/// 1, and take consecutive differences.
pub fn pv_from_kraemer_draws(r: &[f64]) -> Result<ProbabilityVector> {
    check_unit_range(r)?;
    let mut sorted = r.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("range-checked draws are never NaN"));
    let d = r.len() + 1;
    let mut p = vec![0.0; d];
    let mut previous = 0.0;
    for j in 0..d - 1 {
        p[j] = sorted[j] - previous;
        previous = sorted[j];
    }
    p[d - 1] = 1.0 - previous;
    ProbabilityVector::try_new(p)
}

/// Samples a random probability vector of dimension `d`.
///
/// Draw consumption, in order: the method's own draws (`d - 1` u01 draws for
/// `trig`/`norm`/`zhsl`/`kraemer`, `d` u01 draws for `iid`, `d` exponential
/// draws for `devroye`), then — for `trig` and `norm` only — a Fisher–Yates
/// shuffle of the components costing `d - 1` further u01 draws.
pub fn sample_rpv(
    source: &mut RandomSource,
    d: usize,
    method: RpvMethod,
) -> Result<ProbabilityVector> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let pv = match method {
        RpvMethod::Trig => pv_from_trig_draws(&source.sample_uniform(d - 1, 0.0, 1.0)?)?,
        RpvMethod::Norm => pv_from_norm_draws(&source.sample_uniform(d - 1, 0.0, 1.0)?)?,
        RpvMethod::Zhsl => pv_from_zhsl_draws(&source.sample_uniform(d - 1, 0.0, 1.0)?)?,
        RpvMethod::Iid => pv_from_iid_draws(&source.sample_uniform(d, 0.0, 1.0)?)?,
        RpvMethod::Devroye => pv_from_devroye_draws(&source.sample_exponential(d))?,
        RpvMethod::Kraemer => pv_from_kraemer_draws(&source.sample_uniform(d - 1, 0.0, 1.0)?)?,
    };
    if method.needs_shuffle() {
        let mut p = pv.into_vec();
        source.shuffle(&mut p);
        ProbabilityVector::try_new(p)
    } else {
        Ok(pv)
    }
}
