//! Distribution-level tests at fixed seeds: agreement between independent
//! constructions of the same measure, separation of genuinely different
//! measures, and sensitivity checks showing the statistics used elsewhere
//! actually detect the defects they exist to catch.

use rqobj::harness::{
    chi2_uniform, cyclic_spacings, histogram, ks_statistic, ks_two_sample, run_fidelity_exp,
    run_ppt_exp,
};
use rqobj::linalg::unitary_eigenphases;
use rqobj::measures::fidelity_pure;
use rqobj::rng::{substream_seed, RandomSource, RngAlgorithm};
use rqobj::simplex::{sample_rpv, RpvMethod};
use rqobj::states::{sample_rsv, RdmMethod, RsvMethod};
use rqobj::unitary::{
    ginibre_matrix, householder_qr_raw_q, householder_qr_unitary, sample_ru, RuMethod,
};

use std::f64::consts::PI;

/// First components of `n` sampled probability vectors.
fn first_components(method: RpvMethod, d: usize, n: usize, seed: u64) -> Vec<f64> {
    let mut source = RandomSource::new(RngAlgorithm::Mt, seed);
    (0..n)
        .map(|_| sample_rpv(&mut source, d, method).unwrap().components()[0])
        .collect()
}

/// The three flat-measure constructions are pairwise indistinguishable,
/// while the two ordered-construction methods sit visibly apart from them —
/// all measured on the first-component marginal at d = 4.
#[test]
fn flat_simplex_methods_agree_and_ordered_methods_separate() {
    let n = 50_000;
    let zhsl = first_components(RpvMethod::Zhsl, 4, n, 301);
    let devroye = first_components(RpvMethod::Devroye, 4, n, 302);
    let kraemer = first_components(RpvMethod::Kraemer, 4, n, 303);
    let trig = first_components(RpvMethod::Trig, 4, n, 304);
    let norm = first_components(RpvMethod::Norm, 4, n, 305);

    let flat_pairs = [
        ("zhsl vs devroye", &zhsl, &devroye),
        ("zhsl vs kraemer", &zhsl, &kraemer),
        ("devroye vs kraemer", &devroye, &kraemer),
    ];
    for (label, a, b) in flat_pairs {
        let d = ks_two_sample(a, b).unwrap();
        assert!(d < 0.015, "{label}: KS = {d}");
    }
    for (label, sample) in [("trig", &trig), ("norm", &norm)] {
        let d = ks_two_sample(sample, &zhsl).unwrap();
        assert!(d > 0.05, "{label} vs zhsl should separate: KS = {d}");
    }
}

/// Each |U_jk|^2 averages to 1/d over Haar samples, for every entry and
/// every construction.
#[test]
fn unitary_entry_second_moment_is_one_over_d() {
    let d = 4;
    let n = 4000;
    for method in [RuMethod::Gso, RuMethod::Hhr, RuMethod::Hurwitz] {
        let mut source = RandomSource::new(RngAlgorithm::Mt, 310);
        let mut sums = vec![0.0f64; d * d];
        for _ in 0..n {
            let u = sample_ru(&mut source, d, method).unwrap();
            for (slot, z) in sums.iter_mut().zip(u.matrix().data()) {
                *slot += z.norm_sqr();
            }
        }
        // Var |U_jk|^2 = d-1 over (d+1) d^2 ~ 0.012 at d=4; 10 SE ~ 0.017.
        for (k, sum) in sums.iter().enumerate() {
            let mean = sum / n as f64;
            assert!(
                (mean - 0.25).abs() < 0.017,
                "{method}: entry {k} second moment {mean}"
            );
        }
    }
}

/// The triangular-factor phase correction is what makes Householder output
/// Haar. The defect is invisible to every modulus statistic (the raw and
/// corrected matrices differ only by column phases) but glaring in the
/// eigenphase distribution — so the eigenphase chi-square is the statistic
/// that guards it.
#[test]
fn eigenphase_chi2_detects_missing_phase_correction_where_moduli_cannot() {
    let d = 8;
    let n = 400;
    let bins = 20;
    let mut source = RandomSource::new(RngAlgorithm::Mt, 320);
    let mut raw_corner = Vec::with_capacity(n);
    let mut fixed_corner = Vec::with_capacity(n);
    let mut raw_phases = Vec::with_capacity(n * d);
    let mut fixed_phases = Vec::with_capacity(n * d);
    for _ in 0..n {
        let g = ginibre_matrix(&mut source, d, d).unwrap();
        let raw = householder_qr_raw_q(&g).unwrap();
        let fixed = householder_qr_unitary(&g).unwrap();
        raw_corner.push(raw.matrix()[(0, 0)].norm_sqr());
        fixed_corner.push(fixed.matrix()[(0, 0)].norm_sqr());
        raw_phases.extend(unitary_eigenphases(&raw).unwrap());
        fixed_phases.extend(unitary_eigenphases(&fixed).unwrap());
    }

    // Moduli are blind: the raw corner modulus passes the same
    // distributional test as the corrected one.
    let beta_cdf = |x: f64| 1.0 - (1.0 - x).powi(7);
    let ks_raw = ks_statistic(&raw_corner, beta_cdf).unwrap();
    let ks_fixed = ks_statistic(&fixed_corner, beta_cdf).unwrap();
    assert!(ks_raw < 0.05, "raw moduli look perfect: KS = {ks_raw}");
    assert!(ks_fixed < 0.05, "corrected moduli: KS = {ks_fixed}");

    // Eigenphases are not blind.
    let (raw_counts, _) = histogram(&raw_phases, -PI, PI, bins);
    let (_, p_raw) = chi2_uniform(&raw_counts).unwrap();
    let (fixed_counts, _) = histogram(&fixed_phases, -PI, PI, bins);
    let (_, p_fixed) = chi2_uniform(&fixed_counts).unwrap();
    assert!(
        p_raw < 1e-10,
        "uncorrected output must fail phase uniformity decisively: p = {p_raw}"
    );
    assert!(
        p_fixed > 1e-3,
        "corrected output must pass phase uniformity: p = {p_fixed}"
    );
}

/// Pooled eigenphases are uniform for all three constructions.
#[test]
fn eigenphase_uniformity_holds_for_all_three_methods() {
    for (method, seed) in [
        (RuMethod::Gso, 330),
        (RuMethod::Hhr, 331),
        (RuMethod::Hurwitz, 332),
    ] {
        let mut source = RandomSource::new(RngAlgorithm::Gnu, seed);
        let mut phases = Vec::new();
        for _ in 0..300 {
            let u = sample_ru(&mut source, 10, method).unwrap();
            phases.extend(unitary_eigenphases(&u).unwrap());
        }
        let (counts, outside) = histogram(&phases, -PI, PI, 20);
        assert_eq!(outside, 0);
        let (_, p) = chi2_uniform(&counts).unwrap();
        assert!(p > 1e-3, "{method}: p = {p}");
    }
}

/// Cyclic spacings of one unitary sum to the full circle, so pooled
/// normalized spacings average to exactly 1 — a bookkeeping identity, not a
/// statistical statement.
#[test]
fn normalized_spacings_average_to_one_exactly() {
    let d = 12;
    let mut source = RandomSource::new(RngAlgorithm::Mt, 340);
    let mut total = 0.0f64;
    let mut count = 0usize;
    let mean_gap = std::f64::consts::TAU / d as f64;
    for _ in 0..50 {
        let u = sample_ru(&mut source, d, RuMethod::Gso).unwrap();
        let phases = unitary_eigenphases(&u).unwrap();
        for gap in cyclic_spacings(&phases) {
            total += gap / mean_gap;
            count += 1;
        }
    }
    let mean = total / count as f64;
    assert!((mean - 1.0).abs() < 1e-12, "mean normalized spacing {mean}");
}

/// Splitting a run across independently sub-seeded shards and pooling gives
/// the same estimate as one large run, within combined standard errors.
#[test]
fn sharded_runs_pool_to_single_run_estimates() {
    let master = 777;
    let mut single = Vec::new();
    let single_report = run_fidelity_exp(
        RngAlgorithm::Mt,
        &[4],
        3000,
        RsvMethod::Std,
        master,
        &mut single,
    )
    .unwrap();
    let single_row = single_report.rows[0];

    let mut pooled_sum = 0.0;
    let mut pooled_sq = 0.0;
    let shards = 3;
    let per_shard = 1000;
    for shard in 0..shards {
        let mut source = RandomSource::new(RngAlgorithm::Mt, substream_seed(master, 1_000 + shard));
        for _ in 0..per_shard {
            let psi = sample_rsv(&mut source, 4, RsvMethod::Std).unwrap();
            let phi = sample_rsv(&mut source, 4, RsvMethod::Std).unwrap();
            let f = fidelity_pure(&psi, &phi).unwrap();
            pooled_sum += f;
            pooled_sq += f * f;
        }
    }
    let n = (shards * per_shard) as f64;
    let pooled_mean = pooled_sum / n;
    let pooled_se = ((pooled_sq / n - pooled_mean * pooled_mean) / (n - 1.0)).sqrt();

    let gap = (single_row.mean - pooled_mean).abs();
    let combined = (single_row.std_error.powi(2) + pooled_se.powi(2)).sqrt();
    assert!(
        gap < 3.0 * combined,
        "single {} vs pooled {} (gap {gap}, combined SE {combined})",
        single_row.mean,
        pooled_mean
    );
}

/// Haar invariance: the 1/d mean overlap holds even when the two states of
/// a pair come from different constructions.
#[test]
fn cross_method_state_pairs_average_to_one_over_d() {
    let d = 4;
    let n = 2000;
    let mut source = RandomSource::new(RngAlgorithm::Mt, 350);
    let mut sum = 0.0;
    let mut sq = 0.0;
    for _ in 0..n {
        let psi = sample_rsv(&mut source, d, RsvMethod::Gauss).unwrap();
        let phi = sample_rsv(&mut source, d, RsvMethod::Ru).unwrap();
        let f = fidelity_pure(&psi, &phi).unwrap();
        sum += f;
        sq += f * f;
    }
    let mean = sum / n as f64;
    let se = ((sq / n as f64 - mean * mean) / (n as f64 - 1.0)).sqrt();
    let z = (mean - 1.0 / d as f64) / se;
    assert!(z.abs() < 5.0, "mean {mean}, z = {z}");
}

/// The trace-reduction construction with a same-sized ancilla draws from
/// the same measure as the Gram-matrix construction: PPT fractions agree
/// within binomial error.
#[test]
fn trace_reduction_matches_gram_construction_in_distribution() {
    let samples = 2000;
    let mut out = Vec::new();
    let ginibre = run_ppt_exp(
        RngAlgorithm::Mt,
        &[2],
        samples,
        RdmMethod::Ginibre,
        360,
        &mut out,
    )
    .unwrap();
    let ptrace = run_ppt_exp(
        RngAlgorithm::Mt,
        &[2],
        samples,
        RdmMethod::Ptrace,
        361,
        &mut out,
    )
    .unwrap();
    let (a, b) = (ginibre.rows[0], ptrace.rows[0]);
    let gap = (a.fraction - b.fraction).abs();
    let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!(
        gap < 4.0 * combined,
        "ginibre {} vs ptrace {}: gap {gap}",
        a.fraction,
        b.fraction
    );
}

/// Purity extremes: projectors of sampled pure states sit at 1, and every
/// mixed-state sample sits strictly between 1/d and 1.
#[test]
fn purity_reaches_its_extremes_only_where_it_should() {
    let mut source = RandomSource::new(RngAlgorithm::Mt, 370);
    for _ in 0..20 {
        let psi = sample_rsv(&mut source, 5, RsvMethod::Gauss).unwrap();
        let purity = psi.projector().purity();
        assert!((purity - 1.0).abs() < 1e-12, "projector purity {purity}");
    }
    let mut mixed = RandomSource::new(RngAlgorithm::Mt, 371);
    for _ in 0..50 {
        let rho = rqobj::states::sample_rdm(&mut mixed, 5, RdmMethod::Ginibre).unwrap();
        let p = rho.purity();
        assert!(p > 0.2 && p < 1.0, "mixed purity {p}");
    }
}
