//! Experiment drivers: each samples objects, writes a self-describing CSV
//! artifact, and returns a typed report with the headline statistics so
//! tests (and the self-test battery) can assert on numbers instead of
//! re-parsing files.
//!
//! Reproducibility rules, applied uniformly:
//! - single-dimension runs consume one stream seeded directly with the
//!   configured seed;
//! - multi-dimension experiments give each dimension its own substream via
//!   [`substream_seed`] with the dimension itself as the tag, so the row
//!   for a given `d` does not depend on which other dimensions were
//!   requested;
//! - artifacts contain no timestamps or paths, so identical configurations
//!   yield byte-identical files.

use std::io::Write;

use crate::harness::config::{ExperimentConfig, ResolvedMethod};
use crate::harness::csv;
use crate::harness::stats;
use crate::linalg::unitary_eigenphases;
use crate::measures::{coherence_l1, coherence_re, fidelity_pure, is_ppt};
use crate::rng::{substream_seed, RandomSource, RngAlgorithm};
use crate::simplex::sample_rpv;
use crate::states::{sample_rdm, sample_rsv, RdmMethod, RsvMethod};
use crate::unitary::{sample_ru, RuMethod};
use crate::{Error, Result};

const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Normalized-spacing histograms cover [0, SPACING_RANGE) with
/// [`SPACING_BINS`] equal bins; values beyond are counted as overflow.
const SPACING_RANGE: f64 = 5.0;
const SPACING_BINS: usize = 50;
/// Fraction of normalized spacings below this is the level-repulsion
/// statistic (0.25 x the mean spacing).
pub const REPULSION_CUT: f64 = 0.25;

/// Shape summary of a raw-sample dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleReport {
    pub rows: usize,
    pub columns: usize,
}

/// Writes one sample per row: raw draws, probability vectors, or flattened
/// (row-major) complex objects as `_re`/`_im` column pairs.
pub fn run_sample(cfg: &ExperimentConfig, w: &mut dyn Write) -> Result<SampleReport> {
    let resolved = cfg.validate()?;
    let d = cfg.dim;
    let mut source = RandomSource::new(cfg.algorithm, cfg.seed);
    csv::write_comments(
        w,
        &[
            ("object", cfg.object.to_string()),
            ("method", resolved.method_name()),
            ("rng", cfg.algorithm.to_string()),
            ("dim", d.to_string()),
            ("samples", cfg.samples.to_string()),
            ("seed", cfg.seed.to_string()),
            ("version", VERSION.to_string()),
        ],
    )?;
    let columns = match resolved {
        ResolvedMethod::Rn => csv::vector_columns("x", d),
        ResolvedMethod::Rpv(_) => csv::vector_columns("p", d),
        ResolvedMethod::Rsv(_) => csv::complex_vector_columns("c", d),
        ResolvedMethod::Ru(_) => csv::complex_matrix_columns("u", d),
        ResolvedMethod::Rdm(_) => csv::complex_matrix_columns("rho", d),
    };
    csv::write_columns(w, &columns)?;
    for _ in 0..cfg.samples {
        let row = match resolved {
            ResolvedMethod::Rn => source.sample_uniform(d, 0.0, 1.0)?,
            ResolvedMethod::Rpv(m) => sample_rpv(&mut source, d, m)?.into_vec(),
            ResolvedMethod::Rsv(m) => {
                csv::complex_to_reals(sample_rsv(&mut source, d, m)?.amplitudes())
            }
            ResolvedMethod::Ru(m) => {
                csv::complex_to_reals(sample_ru(&mut source, d, m)?.matrix().data())
            }
            ResolvedMethod::Rdm(m) => {
                csv::complex_to_reals(sample_rdm(&mut source, d, m)?.matrix().data())
            }
        };
        csv::write_row(w, &row)?;
    }
    Ok(SampleReport {
        rows: cfg.samples,
        columns: columns.len(),
    })
}

/// One checkpoint of the running-moment trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentsRow {
    pub n: usize,
    /// <x> - 1/2.
    pub mean_shift: f64,
    /// <x^j> - 1/(j+1) for j = 2, 3, 4.
    pub mu: [f64; 3],
    /// <x_i^j x_{i+1}^k> - 1/((j+1)(k+1)) for (j,k) = (1,1), (1,2), (2,2).
    pub eps: [f64; 3],
}

/// Running moments and lag-1 correlations of the raw uniform stream.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentsReport {
    pub rows: Vec<MomentsRow>,
}

/// Lag-1 moment pairs tested: (j, k) exponents on consecutive draws.
const EPS_PAIRS: [(u32, u32); 3] = [(1, 1), (1, 2), (2, 2)];

impl MomentsReport {
    pub fn final_row(&self) -> &MomentsRow {
        self.rows
            .last()
            .expect("moments trace has at least one checkpoint")
    }

    /// The final checkpoint's deviations in units of their standard errors.
    ///
    /// Variances are exact under the uniform null: Var<x^j> = (m_{2j} -
    /// m_j^2)/n with m_a = 1/(a+1), and the lag-1 products form a
    /// 1-dependent sequence, so their mean over P = n-1 pairs has variance
    /// [Var(y) + 2 Cov(y_i, y_{i+1})]/P with Cov = m_j m_{j+k} m_k - (m_j
    /// m_k)^2.
    pub fn z_scores(&self) -> Vec<(String, f64)> {
        fn m(a: u32) -> f64 {
            1.0 / (a as f64 + 1.0)
        }
        let row = self.final_row();
        let n = row.n as f64;
        let mut out = Vec::with_capacity(7);
        for j in 1..=4u32 {
            let shift = if j == 1 {
                row.mean_shift
            } else {
                row.mu[j as usize - 2]
            };
            let var = (m(2 * j) - m(j) * m(j)) / n;
            out.push((format!("mu{j}"), shift / var.sqrt()));
        }
        let pairs = (row.n - 1) as f64;
        for (idx, &(j, k)) in EPS_PAIRS.iter().enumerate() {
            let var_y = m(2 * j) * m(2 * k) - (m(j) * m(k)).powi(2);
            let cov = m(j) * m(j + k) * m(k) - (m(j) * m(k)).powi(2);
            let var = (var_y + 2.0 * cov) / pairs;
            out.push((format!("eps{j}{k}"), row.eps[idx] / var.sqrt()));
        }
        out
    }
}

/// Checkpoints 1, 2, 5, 10, 20, 50, ... capped at `n`, starting at 10 (the
/// correlation columns need a few pairs to mean anything), always including
/// `n` itself.
fn checkpoints(n: usize) -> Vec<usize> {
    let mut points = Vec::new();
    let mut decade = 10usize;
    'outer: loop {
        for factor in [1usize, 2, 5] {
            let point = decade.saturating_mul(factor);
            if point >= n {
                break 'outer;
            }
            points.push(point);
        }
        match decade.checked_mul(10) {
            Some(next) => decade = next,
            None => break,
        }
    }
    points.push(n);
    points
}

/// Streams uniform draws and reports running moment/correlation deviations
/// at logarithmic checkpoints. Requires `object = rn` (the trace is a
/// property of the raw stream, not of any derived object).
pub fn run_moments(cfg: &ExperimentConfig, w: &mut dyn Write) -> Result<MomentsReport> {
    let resolved = cfg.validate()?;
    if resolved != ResolvedMethod::Rn {
        return Err(Error::Usage(format!(
            "the moments trace runs on raw draws: use object 'rn', not '{}'",
            cfg.object
        )));
    }
    if cfg.samples < 10 {
        return Err(Error::Usage(
            "the moments trace needs at least 10 draws".into(),
        ));
    }
    csv::write_comments(
        w,
        &[
            ("experiment", "moments".to_string()),
            ("rng", cfg.algorithm.to_string()),
            ("samples", cfg.samples.to_string()),
            ("seed", cfg.seed.to_string()),
            ("version", VERSION.to_string()),
        ],
    )?;
    csv::write_columns(
        w,
        &[
            "n",
            "mean_shift",
            "mu2",
            "mu3",
            "mu4",
            "eps11",
            "eps12",
            "eps22",
        ],
    )?;

    let mut source = RandomSource::new(cfg.algorithm, cfg.seed);
    let marks = checkpoints(cfg.samples);
    let mut rows = Vec::with_capacity(marks.len());
    let mut power_sums = [0.0f64; 4];
    let mut pair_sums = [0.0f64; 3];
    let mut previous = None;
    let mut next_mark = 0usize;
    for i in 1..=cfg.samples {
        let x = source.next_u01();
        let mut p = 1.0;
        for sum in power_sums.iter_mut() {
            p *= x;
            *sum += p;
        }
        if let Some(prev) = previous {
            let prev: f64 = prev;
            pair_sums[0] += prev * x;
            pair_sums[1] += prev * x * x;
            pair_sums[2] += prev * prev * x * x;
        }
        previous = Some(x);
        if i == marks[next_mark] {
            next_mark += 1;
            let n = i as f64;
            let pairs = (i - 1) as f64;
            let row = MomentsRow {
                n: i,
                mean_shift: power_sums[0] / n - 0.5,
                mu: [
                    power_sums[1] / n - 1.0 / 3.0,
                    power_sums[2] / n - 0.25,
                    power_sums[3] / n - 0.2,
                ],
                eps: [
                    pair_sums[0] / pairs - 0.25,
                    pair_sums[1] / pairs - 1.0 / 6.0,
                    pair_sums[2] / pairs - 1.0 / 9.0,
                ],
            };
            let mut values = vec![row.n as f64, row.mean_shift];
            values.extend_from_slice(&row.mu);
            values.extend_from_slice(&row.eps);
            csv::write_row(w, &values)?;
            rows.push(row);
        }
    }
    Ok(MomentsReport { rows })
}

/// Mean fidelity of independent pure-state pairs at one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRow {
    pub d: usize,
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub rows: Vec<FidelityRow>,
}

/// For each dimension, samples `samples` independent state pairs and
/// reports the mean squared overlap with its standard error (Haar-uniform
/// states average to 1/d).
pub fn run_fidelity_exp(
    algorithm: RngAlgorithm,
    dims: &[usize],
    samples: usize,
    method: RsvMethod,
    seed: u64,
    w: &mut dyn Write,
) -> Result<FidelityReport> {
    if dims.is_empty() {
        return Err(Error::Usage(
            "--dims must name at least one dimension".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::Usage("--samples must be at least 1".into()));
    }
    csv::write_comments(
        w,
        &[
            ("experiment", "fidelity".to_string()),
            ("method", method.to_string()),
            ("rng", algorithm.to_string()),
            ("dims", join_dims(dims)),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("version", VERSION.to_string()),
        ],
    )?;
    csv::write_columns(w, &["d", "mean_fidelity", "std_error"])?;
    let mut rows = Vec::with_capacity(dims.len());
    for &d in dims {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut source = RandomSource::new(algorithm, substream_seed(seed, d as u64));
        let mut fidelities = Vec::with_capacity(samples);
        for _ in 0..samples {
            let psi = sample_rsv(&mut source, d, method)?;
            let phi = sample_rsv(&mut source, d, method)?;
            fidelities.push(fidelity_pure(&psi, &phi)?);
        }
        let (mean, std_error) = stats::mean_and_se(&fidelities)?;
        csv::write_row(w, &[d as f64, mean, std_error])?;
        rows.push(FidelityRow { d, mean, std_error });
    }
    Ok(FidelityReport { rows })
}

/// The `d` cyclic nearest-neighbor gaps of a sorted phase list on
/// [-pi, pi): consecutive differences plus the wrap-around gap. Gaps sum to
/// 2 pi.
pub fn cyclic_spacings(sorted_phases: &[f64]) -> Vec<f64> {
    let d = sorted_phases.len();
    let mut gaps = Vec::with_capacity(d);
    for i in 1..d {
        gaps.push(sorted_phases[i] - sorted_phases[i - 1]);
    }
    if d > 0 {
        gaps.push(sorted_phases[0] + std::f64::consts::TAU - sorted_phases[d - 1]);
    }
    gaps
}

/// Pooled eigenphase statistics of a batch of random unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenphaseReport {
    pub d: usize,
    pub samples: usize,
    /// Phase histogram over [-pi, pi).
    pub phase_counts: Vec<usize>,
    pub phase_chi2: f64,
    pub phase_p: f64,
    /// Histogram of spacings normalized by the mean gap 2 pi / d, over
    /// [0, 5) in 50 bins.
    pub spacing_counts: Vec<usize>,
    pub spacing_overflow: usize,
    /// Fraction of normalized spacings below [`REPULSION_CUT`].
    pub repulsion_fraction: f64,
}

/// Samples `samples` unitaries at dimension `d`, pools all eigenphases, and
/// histograms both the phases (uniformity chi-square over `bins` bins) and
/// the cyclically normalized nearest-neighbor spacings (level repulsion).
pub fn run_eigenphase_exp(
    algorithm: RngAlgorithm,
    d: usize,
    samples: usize,
    method: RuMethod,
    bins: usize,
    seed: u64,
    w: &mut dyn Write,
) -> Result<EigenphaseReport> {
    if d < 2 {
        return Err(Error::Usage(
            "eigenphase spacings need dimension at least 2".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::Usage("--samples must be at least 1".into()));
    }
    if bins < 2 {
        return Err(Error::Usage("--bins must be at least 2".into()));
    }
    let mut source = RandomSource::new(algorithm, seed);
    let mut phases = Vec::with_capacity(d * samples);
    let mut normalized = Vec::with_capacity(d * samples);
    let mean_gap = std::f64::consts::TAU / d as f64;
    for _ in 0..samples {
        let u = sample_ru(&mut source, d, method)?;
        let theta = unitary_eigenphases(&u)?;
        for gap in cyclic_spacings(&theta) {
            normalized.push(gap / mean_gap);
        }
        phases.extend_from_slice(&theta);
    }
    use std::f64::consts::PI;
    let (phase_counts, phase_outside) = stats::histogram(&phases, -PI, PI, bins);
    debug_assert_eq!(phase_outside, 0, "eigenphases live on [-pi, pi)");
    let (phase_chi2, phase_p) = stats::chi2_uniform(&phase_counts)?;
    let (spacing_counts, spacing_overflow) =
        stats::histogram(&normalized, 0.0, SPACING_RANGE, SPACING_BINS);
    let repulsed = normalized.iter().filter(|&&s| s < REPULSION_CUT).count();
    let repulsion_fraction = repulsed as f64 / normalized.len() as f64;

    csv::write_comments(
        w,
        &[
            ("experiment", "eigenphases".to_string()),
            ("method", method.to_string()),
            ("rng", algorithm.to_string()),
            ("dim", d.to_string()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("version", VERSION.to_string()),
            ("table", "phases".to_string()),
        ],
    )?;
    csv::write_columns(w, &["bin_lo", "bin_hi", "count", "density"])?;
    write_histogram_rows(w, &phase_counts, -PI, PI, phases.len())?;
    csv::write_comments(w, &[("table", "spacings".to_string())])?;
    csv::write_columns(w, &["bin_lo", "bin_hi", "count", "density"])?;
    write_histogram_rows(w, &spacing_counts, 0.0, SPACING_RANGE, normalized.len())?;
    csv::write_comments(
        w,
        &[
            ("phase_chi2", csv::fmt_float(phase_chi2)),
            ("phase_p", csv::fmt_float(phase_p)),
            ("repulsion_fraction", csv::fmt_float(repulsion_fraction)),
            ("spacing_overflow", spacing_overflow.to_string()),
        ],
    )?;

    Ok(EigenphaseReport {
        d,
        samples,
        phase_counts,
        phase_chi2,
        phase_p,
        spacing_counts,
        spacing_overflow,
        repulsion_fraction,
    })
}

fn write_histogram_rows(
    w: &mut dyn Write,
    counts: &[usize],
    lo: f64,
    hi: f64,
    total: usize,
) -> Result<()> {
    let width = (hi - lo) / counts.len() as f64;
    for (i, &count) in counts.iter().enumerate() {
        let bin_lo = lo + i as f64 * width;
        let density = count as f64 / (total as f64 * width);
        csv::write_row(w, &[bin_lo, bin_lo + width, count as f64, density])?;
    }
    Ok(())
}

/// PPT fraction at one bipartition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptRow {
    /// Total dimension, 2 * d_b.
    pub d: usize,
    pub d_b: usize,
    pub fraction: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PptReport {
    pub rows: Vec<PptRow>,
    /// Least-squares (alpha, beta) of fraction = alpha * exp(-beta d), when
    /// at least two dimensions had nonzero fractions.
    pub fit: Option<(f64, f64)>,
}

/// For each `d_b`, samples states on a 2 x d_b bipartition and reports the
/// fraction with positive partial transpose (binomial standard errors), plus
/// an exponential-decay fit across dimensions in the CSV footer.
pub fn run_ppt_exp(
    algorithm: RngAlgorithm,
    d_b_list: &[usize],
    samples: usize,
    method: RdmMethod,
    seed: u64,
    w: &mut dyn Write,
) -> Result<PptReport> {
    if d_b_list.is_empty() {
        return Err(Error::Usage(
            "--dims must name at least one dimension".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::Usage("--samples must be at least 1".into()));
    }
    csv::write_comments(
        w,
        &[
            ("experiment", "ppt".to_string()),
            ("method", method.to_string()),
            ("rng", algorithm.to_string()),
            (
                "dims",
                join_dims(&d_b_list.iter().map(|&b| 2 * b).collect::<Vec<_>>()),
            ),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("version", VERSION.to_string()),
        ],
    )?;
    csv::write_columns(w, &["d", "d_b", "fraction", "std_error"])?;
    let mut rows = Vec::with_capacity(d_b_list.len());
    for &d_b in d_b_list {
        if d_b == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let d = 2 * d_b;
        let mut source = RandomSource::new(algorithm, substream_seed(seed, d as u64));
        let mut positive = 0usize;
        for _ in 0..samples {
            let rho = sample_rdm(&mut source, d, method)?;
            if is_ppt(&rho, 2, d_b)?.ppt {
                positive += 1;
            }
        }
        let fraction = positive as f64 / samples as f64;
        let std_error = (fraction * (1.0 - fraction) / samples as f64).sqrt();
        csv::write_row(w, &[d as f64, d_b as f64, fraction, std_error])?;
        rows.push(PptRow {
            d,
            d_b,
            fraction,
            std_error,
        });
    }
    let fit = stats::exponential_decay_fit(
        &rows
            .iter()
            .map(|r| (r.d as f64, r.fraction))
            .collect::<Vec<_>>(),
    );
    if let Some((alpha, beta)) = fit {
        csv::write_comments(
            w,
            &[
                ("fit_alpha", csv::fmt_float(alpha)),
                ("fit_beta", csv::fmt_float(beta)),
            ],
        )?;
    }
    Ok(PptReport { rows, fit })
}

/// Mean coherences at one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceRow {
    pub d: usize,
    /// Mean of C_l1 / log2(d) over samples.
    pub l1_over_log: f64,
    pub l1_se: f64,
    /// Mean relative entropy of coherence (bits).
    pub re_mean: f64,
    pub re_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    pub rows: Vec<CoherenceRow>,
}

/// For each dimension, averages the normalized L1 coherence and the
/// relative entropy of coherence over sampled density matrices.
pub fn run_coherence_exp(
    algorithm: RngAlgorithm,
    dims: &[usize],
    samples: usize,
    method: RdmMethod,
    seed: u64,
    w: &mut dyn Write,
) -> Result<CoherenceReport> {
    if dims.is_empty() {
        return Err(Error::Usage(
            "--dims must name at least one dimension".into(),
        ));
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(Error::Usage(
            "coherence normalization log2(d) needs every dimension to be at least 2".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::Usage("--samples must be at least 1".into()));
    }
    csv::write_comments(
        w,
        &[
            ("experiment", "coherence".to_string()),
            ("method", method.to_string()),
            ("rng", algorithm.to_string()),
            ("dims", join_dims(dims)),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("version", VERSION.to_string()),
        ],
    )?;
    csv::write_columns(
        w,
        &[
            "d",
            "l1_over_log2d",
            "l1_std_error",
            "re_mean",
            "re_std_error",
        ],
    )?;
    let mut rows = Vec::with_capacity(dims.len());
    for &d in dims {
        let log2d = (d as f64).log2();
        let mut source = RandomSource::new(algorithm, substream_seed(seed, d as u64));
        let mut l1 = Vec::with_capacity(samples);
        let mut re = Vec::with_capacity(samples);
        for _ in 0..samples {
            let rho = sample_rdm(&mut source, d, method)?;
            l1.push(coherence_l1(&rho) / log2d);
            re.push(coherence_re(&rho)?);
        }
        let (l1_over_log, l1_se) = stats::mean_and_se(&l1)?;
        let (re_mean, re_se) = stats::mean_and_se(&re)?;
        csv::write_row(w, &[d as f64, l1_over_log, l1_se, re_mean, re_se])?;
        rows.push(CoherenceRow {
            d,
            l1_over_log,
            l1_se,
            re_mean,
            re_se,
        });
    }
    Ok(CoherenceReport { rows })
}

fn join_dims(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::SampleObject;
    use crate::simplex::RpvMethod;

    fn rpv_config(samples: usize) -> ExperimentConfig {
        ExperimentConfig {
            object: SampleObject::Rpv,
            method: Some("zhsl".into()),
            algorithm: RngAlgorithm::Mt,
            dim: 4,
            samples,
            seed: 7,
        }
    }

    #[test]
    fn sample_csv_shape_and_content() {
        let mut buf = Vec::new();
        let report = run_sample(&rpv_config(2), &mut buf).unwrap();
        assert_eq!(
            report,
            SampleReport {
                rows: 2,
                columns: 4
            }
        );
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# object=rpv");
        assert_eq!(lines[1], "# method=zhsl");
        assert_eq!(lines[2], "# rng=mt");
        assert_eq!(lines[3], "# dim=4");
        assert_eq!(lines[4], "# samples=2");
        assert_eq!(lines[5], "# seed=7");
        assert!(lines[6].starts_with("# version="));
        assert_eq!(lines[7], "p1,p2,p3,p4");
        assert_eq!(lines.len(), 10);
        // Each data row parses back to a probability vector.
        for line in &lines[8..] {
            let values: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
            assert_eq!(values.len(), 4);
            let sum: f64 = values.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sample_runs_are_byte_identical() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_sample(&rpv_config(5), &mut a).unwrap();
        run_sample(&rpv_config(5), &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unitary_sample_rows_have_eight_columns_at_d2() {
        let cfg = ExperimentConfig {
            object: SampleObject::Ru,
            method: Some("gso".into()),
            algorithm: RngAlgorithm::Mt,
            dim: 2,
            samples: 1,
            seed: 3,
        };
        let mut buf = Vec::new();
        let report = run_sample(&cfg, &mut buf).unwrap();
        assert_eq!(report.columns, 8);
        let text = String::from_utf8(buf).unwrap();
        let data_line = text.lines().last().unwrap();
        assert_eq!(data_line.split(',').count(), 8);
    }

    #[test]
    fn moments_requires_raw_object() {
        let mut buf = Vec::new();
        assert!(matches!(
            run_moments(&rpv_config(100), &mut buf),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn moments_checkpoints_are_logarithmic_and_end_at_n() {
        assert_eq!(checkpoints(1000), vec![10, 20, 50, 100, 200, 500, 1000]);
        assert_eq!(checkpoints(130), vec![10, 20, 50, 100, 130]);
        assert_eq!(checkpoints(10), vec![10]);
    }

    #[test]
    fn moments_trace_is_small_at_modest_n() {
        let cfg = ExperimentConfig {
            object: SampleObject::Rn,
            method: None,
            algorithm: RngAlgorithm::Mt,
            dim: 1,
            samples: 20_000,
            seed: 99,
        };
        let mut buf = Vec::new();
        let report = run_moments(&cfg, &mut buf).unwrap();
        assert_eq!(report.final_row().n, 20_000);
        for (name, z) in report.z_scores() {
            assert!(z.abs() < 5.0, "{name}: z = {z}");
        }
        // The CSV has one row per checkpoint plus 5 comments + 1 header.
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5 + 1 + report.rows.len());
    }

    #[test]
    fn fidelity_dimension_one_is_certain() {
        let mut buf = Vec::new();
        let report =
            run_fidelity_exp(RngAlgorithm::Mt, &[1], 50, RsvMethod::Gauss, 5, &mut buf).unwrap();
        assert!((report.rows[0].mean - 1.0).abs() < 1e-12);
        assert!(report.rows[0].std_error < 1e-12);
    }

    #[test]
    fn fidelity_rows_do_not_depend_on_dim_list() {
        let mut alone = Vec::new();
        let solo =
            run_fidelity_exp(RngAlgorithm::Mt, &[4], 100, RsvMethod::Std, 11, &mut alone).unwrap();
        let mut with_others = Vec::new();
        let multi = run_fidelity_exp(
            RngAlgorithm::Mt,
            &[2, 4, 8],
            100,
            RsvMethod::Std,
            11,
            &mut with_others,
        )
        .unwrap();
        assert_eq!(solo.rows[0], multi.rows[1]);
    }

    #[test]
    fn cyclic_spacings_sum_to_full_circle() {
        let phases = [-2.0, -0.5, 0.1, 3.0];
        let gaps = cyclic_spacings(&phases);
        assert_eq!(gaps.len(), 4);
        let total: f64 = gaps.iter().sum();
        assert!((total - std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn eigenphase_two_dimensional_gaps_are_complementary() {
        let mut buf = Vec::new();
        let report =
            run_eigenphase_exp(RngAlgorithm::Mt, 2, 50, RuMethod::Gso, 4, 21, &mut buf).unwrap();
        // Every pair of cyclic gaps sums to 2 pi, so normalized ones (mean
        // gap pi) sum to 2; both histograms and the fraction only see
        // values in [0, 2].
        assert_eq!(report.spacing_overflow, 0);
        let seen: usize = report.spacing_counts.iter().sum();
        assert_eq!(seen, 2 * 50);
    }

    #[test]
    fn eigenphase_reports_are_deterministic() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let ra =
            run_eigenphase_exp(RngAlgorithm::Gnu, 6, 30, RuMethod::Hurwitz, 10, 2, &mut a).unwrap();
        let rb =
            run_eigenphase_exp(RngAlgorithm::Gnu, 6, 30, RuMethod::Hurwitz, 10, 2, &mut b).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(a, b);
    }

    #[test]
    fn ppt_bell_like_dimensions_fraction_in_unit_interval() {
        let mut buf = Vec::new();
        let report = run_ppt_exp(
            RngAlgorithm::Mt,
            &[2],
            200,
            RdmMethod::Ginibre,
            31,
            &mut buf,
        )
        .unwrap();
        let row = report.rows[0];
        assert_eq!(row.d, 4);
        assert!((0.0..=1.0).contains(&row.fraction));
        // d=4 Ginibre states are PPT roughly a quarter of the time; a very
        // loose band catches gross breakage only.
        assert!(
            row.fraction > 0.1 && row.fraction < 0.45,
            "{}",
            row.fraction
        );
    }

    #[test]
    fn coherence_requires_dimension_two_plus() {
        let mut buf = Vec::new();
        assert!(matches!(
            run_coherence_exp(RngAlgorithm::Mt, &[1, 4], 10, RdmMethod::Std, 1, &mut buf),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn coherence_rows_are_positive_and_reproducible() {
        let mut a = Vec::new();
        let ra =
            run_coherence_exp(RngAlgorithm::Mt, &[4, 8], 50, RdmMethod::Std, 17, &mut a).unwrap();
        let mut b = Vec::new();
        let rb =
            run_coherence_exp(RngAlgorithm::Mt, &[4, 8], 50, RdmMethod::Std, 17, &mut b).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(a, b);
        for row in &ra.rows {
            assert!(row.l1_over_log > 0.0);
            assert!(row.re_mean > 0.0);
        }
    }

    #[test]
    fn rpv_methods_all_flow_through_run_sample() {
        for method in ["trig", "norm", "zhsl", "iid", "devroye", "kraemer"] {
            let cfg = ExperimentConfig {
                object: SampleObject::Rpv,
                method: Some(method.into()),
                algorithm: RngAlgorithm::Gnu,
                dim: 3,
                samples: 3,
                seed: 123,
            };
            let mut buf = Vec::new();
            let report = run_sample(&cfg, &mut buf).unwrap();
            assert_eq!(report.columns, 3);
        }
        let _ = RpvMethod::default();
    }
}
