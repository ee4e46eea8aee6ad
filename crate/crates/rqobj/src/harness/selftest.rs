//! A fixed-seed validation battery covering every sampler and measure in
//! the crate. Each check compares one measured quantity against an explicit
//! bound; seeds are compiled in, so the report is identical on every run of
//! the same build.

use std::io::Write;

use num_complex::Complex64;

use crate::harness::config::{ExperimentConfig, SampleObject};
use crate::harness::experiments::{run_eigenphase_exp, run_fidelity_exp, run_moments};
use crate::harness::stats::{ks_statistic, ks_two_sample};
use crate::linalg::{
    determinant, hermitian_eig, partial_trace, unitary_eigenphases, ComplexMatrix, Subsystem,
};
use crate::measures::{coherence_l1, coherence_re, is_ppt, vn_entropy};
use crate::rng::{RandomSource, RngAlgorithm};
use crate::simplex::{sample_rpv, RpvMethod};
use crate::states::{sample_rdm, sample_rsv, DensityMatrix, RdmMethod, RsvMethod, StateVector};
use crate::unitary::{sample_ru, RuMethod};
use crate::Result;

/// Which side of the bound counts as passing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AtMost,
    AtLeast,
}

/// One line of the battery.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub direction: Direction,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub checks: Vec<SelftestCheck>,
    pub passed: bool,
}

struct Battery<'w> {
    w: &'w mut dyn Write,
    checks: Vec<SelftestCheck>,
}

impl<'w> Battery<'w> {
    fn record(
        &mut self,
        name: &'static str,
        measured: f64,
        direction: Direction,
        bound: f64,
    ) -> Result<()> {
        let pass = match direction {
            Direction::AtMost => measured <= bound,
            Direction::AtLeast => measured >= bound,
        };
        let op = match direction {
            Direction::AtMost => "<=",
            Direction::AtLeast => ">=",
        };
        writeln!(
            self.w,
            "{} {:<36} {:+.6e} {} {:+.6e}",
            if pass { "PASS" } else { "FAIL" },
            name,
            measured,
            op,
            bound,
        )?;
        self.checks.push(SelftestCheck {
            name,
            measured,
            bound,
            direction,
            pass,
        });
        Ok(())
    }

    fn at_most(&mut self, name: &'static str, measured: f64, bound: f64) -> Result<()> {
        self.record(name, measured, Direction::AtMost, bound)
    }

    fn at_least(&mut self, name: &'static str, measured: f64, bound: f64) -> Result<()> {
        self.record(name, measured, Direction::AtLeast, bound)
    }
}

fn bell_state() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::try_new(vec![
        Complex64::new(h, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(h, 0.0),
    ])
    .expect("Bell amplitudes are normalized")
}

/// Runs the whole battery, printing one line per check, and reports whether
/// every check passed.
pub fn run_selftest(w: &mut dyn Write) -> Result<SelftestReport> {
    writeln!(w, "# selftest version={}", env!("CARGO_PKG_VERSION"))?;
    let mut b = Battery {
        w,
        checks: Vec::new(),
    };

    // --- raw generators ---------------------------------------------------
    let first = RandomSource::new(RngAlgorithm::Mt, 5489).next_u01();
    b.at_most(
        "mt_reference_first_u01",
        (first - 0.814_723_686_393_178_9).abs(),
        0.0,
    )?;

    for (name, algorithm) in [
        ("uniform_moments_z_mt", RngAlgorithm::Mt),
        ("uniform_moments_z_gnu", RngAlgorithm::Gnu),
    ] {
        let cfg = ExperimentConfig {
            object: SampleObject::Rn,
            method: None,
            algorithm,
            dim: 1,
            samples: 100_000,
            seed: 20_260_101,
        };
        let report = run_moments(&cfg, &mut std::io::sink())?;
        let worst = report
            .z_scores()
            .into_iter()
            .map(|(_, z)| z.abs())
            .fold(0.0, f64::max);
        b.at_most(name, worst, 5.0)?;
    }

    {
        let n = 100_000usize;
        let mut source = RandomSource::new(RngAlgorithm::Mt, 41);
        let g = source.sample_gaussian(n);
        let mean: f64 = g.iter().sum::<f64>() / n as f64;
        let var: f64 = g.iter().map(|x| x * x).sum::<f64>() / n as f64 - mean * mean;
        let z_mean = mean / (1.0 / (n as f64).sqrt());
        let z_var = (var - 1.0) / (2.0 / n as f64).sqrt();
        b.at_most("gaussian_moments_z", z_mean.abs().max(z_var.abs()), 5.0)?;

        let e = source.sample_exponential(n);
        let e_mean: f64 = e.iter().sum::<f64>() / n as f64;
        let z = (e_mean - 1.0) / (1.0 / (n as f64).sqrt());
        b.at_most("exponential_mean_z", z.abs(), 5.0)?;
    }

    // --- probability vectors ----------------------------------------------
    {
        let mut source = RandomSource::new(RngAlgorithm::Mt, 42);
        let mut max_sum_dev = 0.0f64;
        let mut min_component = f64::INFINITY;
        for method in RpvMethod::ALL {
            for _ in 0..500 {
                let p = sample_rpv(&mut source, 5, method)?;
                let sum: f64 = p.components().iter().sum();
                max_sum_dev = max_sum_dev.max((sum - 1.0).abs());
                min_component =
                    min_component.min(p.components().iter().copied().fold(f64::INFINITY, f64::min));
            }
        }
        b.at_most("rpv_sum_deviation", max_sum_dev, 1e-12)?;
        b.at_least("rpv_min_component", min_component, 0.0)?;

        // Two flat-measure methods must agree in distribution; compare the
        // first components with a two-sample KS statistic.
        let first = |method: RpvMethod, seed: u64| -> Result<Vec<f64>> {
            let mut s = RandomSource::new(RngAlgorithm::Mt, seed);
            (0..4000)
                .map(|_| Ok(sample_rpv(&mut s, 4, method)?.components()[0]))
                .collect()
        };
        let ks = ks_two_sample(
            &first(RpvMethod::Zhsl, 43)?,
            &first(RpvMethod::Kraemer, 44)?,
        )?;
        b.at_most("rpv_zhsl_vs_kraemer_ks", ks, 0.05)?;
    }

    // --- unitaries ---------------------------------------------------------
    {
        let mut worst = 0.0f64;
        for method in [RuMethod::Gso, RuMethod::Hhr, RuMethod::Hurwitz] {
            let mut source = RandomSource::new(RngAlgorithm::Mt, 45);
            for _ in 0..5 {
                let u = sample_ru(&mut source, 16, method)?;
                let gram = u.matrix().adjoint().mul(u.matrix())?;
                let dev = gram.max_abs_diff(&ComplexMatrix::identity(16))?;
                worst = worst.max(dev);
            }
        }
        b.at_most("ru_unitarity_residual", worst, 1e-10)?;

        // |U_11|^2 of an 8x8 Haar unitary follows Beta(1, 7):
        // F(x) = 1 - (1 - x)^7.
        let beta_cdf = |x: f64| 1.0 - (1.0 - x).powi(7);
        for (name, method) in [
            ("ru_gso_corner_beta_ks", RuMethod::Gso),
            ("ru_hhr_corner_beta_ks", RuMethod::Hhr),
            ("ru_hurwitz_corner_beta_ks", RuMethod::Hurwitz),
        ] {
            let mut source = RandomSource::new(RngAlgorithm::Mt, 46);
            let corners: Vec<f64> = (0..2000)
                .map(|_| Ok(sample_ru(&mut source, 8, method)?.matrix()[(0, 0)].norm_sqr()))
                .collect::<Result<_>>()?;
            b.at_most(name, ks_statistic(&corners, beta_cdf)?, 0.05)?;
        }

        let report = run_eigenphase_exp(
            RngAlgorithm::Mt,
            12,
            400,
            RuMethod::Gso,
            20,
            2026,
            &mut std::io::sink(),
        )?;
        b.at_least("ru_eigenphase_chi2_p", report.phase_p, 0.001)?;
        b.at_most(
            "ru_spacing_repulsion_fraction",
            report.repulsion_fraction,
            0.03,
        )?;

        // The eigenphases of one unitary must multiply back to its
        // determinant (phases wrap mod 2 pi).
        let mut source = RandomSource::new(RngAlgorithm::Gnu, 47);
        let u = sample_ru(&mut source, 7, RuMethod::Hurwitz)?;
        let phases = unitary_eigenphases(&u)?;
        let det = determinant(u.matrix())?;
        let diff = (det.arg() - phases.iter().sum::<f64>()).rem_euclid(std::f64::consts::TAU);
        let wrapped = diff.min(std::f64::consts::TAU - diff);
        b.at_most("ru_eigenphase_det_consistency", wrapped, 1e-8)?;
    }

    // --- state vectors ------------------------------------------------------
    {
        let mut worst = 0.0f64;
        for method in [RsvMethod::Gauss, RsvMethod::Std, RsvMethod::Ru] {
            let mut source = RandomSource::new(RngAlgorithm::Mt, 48);
            for _ in 0..100 {
                let psi = sample_rsv(&mut source, 6, method)?;
                let norm: f64 = psi.amplitudes().iter().map(|c| c.norm_sqr()).sum();
                worst = worst.max((norm - 1.0).abs());
            }
        }
        b.at_most("rsv_norm_deviation", worst, 1e-12)?;

        for (name, dims, method, seed) in [
            ("rsv_fidelity_z_std", &[2usize, 4][..], RsvMethod::Std, 49),
            ("rsv_fidelity_z_gauss", &[3usize][..], RsvMethod::Gauss, 50),
        ] {
            let report = run_fidelity_exp(
                RngAlgorithm::Mt,
                dims,
                2000,
                method,
                seed,
                &mut std::io::sink(),
            )?;
            let worst = report
                .rows
                .iter()
                .map(|r| ((r.mean - 1.0 / r.d as f64) / r.std_error).abs())
                .fold(0.0, f64::max);
            b.at_most(name, worst, 5.0)?;
        }
    }

    // --- density matrices ---------------------------------------------------
    {
        let mut trace_dev = 0.0f64;
        let mut herm_dev = 0.0f64;
        let mut min_eig = f64::INFINITY;
        let mut purity_min = f64::INFINITY;
        let mut purity_max = 0.0f64;
        for method in [
            RdmMethod::Std,
            RdmMethod::Ginibre,
            RdmMethod::Bures,
            RdmMethod::Ptrace,
        ] {
            let mut source = RandomSource::new(RngAlgorithm::Mt, 51);
            for _ in 0..50 {
                let rho = sample_rdm(&mut source, 4, method)?;
                trace_dev = trace_dev.max((rho.matrix().trace()? - Complex64::ONE).norm());
                herm_dev = herm_dev.max(rho.matrix().hermitian_residual()?);
                min_eig = min_eig.min(rho.min_eigenvalue()?);
                let p = rho.purity();
                purity_min = purity_min.min(p);
                purity_max = purity_max.max(p);
            }
        }
        b.at_most("rdm_trace_deviation", trace_dev, 1e-12)?;
        b.at_most("rdm_hermiticity_residual", herm_dev, 1e-12)?;
        b.at_least("rdm_min_eigenvalue", min_eig, -1e-10)?;
        b.at_least("rdm_purity_floor", purity_min, 0.25 - 1e-12)?;
        b.at_most("rdm_purity_ceiling", purity_max, 1.0 + 1e-12)?;

        // Eigendecomposition round trip on a sampled state.
        let mut source = RandomSource::new(RngAlgorithm::Mt, 52);
        let rho = sample_rdm(&mut source, 5, RdmMethod::Std)?;
        let (values, vectors) = hermitian_eig(rho.matrix())?;
        let v = vectors.matrix();
        let rebuilt = ComplexMatrix::from_fn(5, 5, |j, k| {
            (0..5)
                .map(|m| v[(j, m)] * values[m] * v[(k, m)].conj())
                .sum()
        });
        b.at_most(
            "rdm_eigen_round_trip",
            rebuilt.max_abs_diff(rho.matrix())?,
            1e-9,
        )?;
    }

    // --- bipartite structure and measures ------------------------------------
    {
        let bell = bell_state().projector();
        let outcome = is_ppt(&bell, 2, 2)?;
        b.at_most(
            "bell_pt_min_eigenvalue_dev",
            (outcome.min_eigenvalue + 0.5).abs(),
            1e-10,
        )?;
        b.at_most("bell_ppt_flag", if outcome.ppt { 1.0 } else { 0.0 }, 0.0)?;

        let reduced = partial_trace(&bell, 2, 2, Subsystem::B)?;
        let half_identity = ComplexMatrix::identity(2).scaled(Complex64::new(0.5, 0.0));
        b.at_most(
            "bell_reduced_state_dev",
            reduced.matrix().max_abs_diff(&half_identity)?,
            1e-12,
        )?;

        b.at_most(
            "entropy_maximally_mixed_dev",
            (vn_entropy(&DensityMatrix::try_new(half_identity)?)? - 1.0).abs(),
            1e-12,
        )?;
        b.at_most("entropy_pure_state", vn_entropy(&bell)?.abs(), 1e-9)?;

        let mut fractions = Vec::new();
        for method in [RdmMethod::Std, RdmMethod::Ginibre, RdmMethod::Bures] {
            let mut source = RandomSource::new(RngAlgorithm::Mt, 53);
            let mut positive = 0usize;
            for _ in 0..400 {
                if is_ppt(&sample_rdm(&mut source, 4, method)?, 2, 2)?.ppt {
                    positive += 1;
                }
            }
            fractions.push(positive as f64 / 400.0);
        }
        b.at_least("ppt_gap_std_over_ginibre", fractions[0] - fractions[1], 0.1)?;
        b.at_least(
            "ppt_gap_ginibre_over_bures",
            fractions[1] - fractions[2],
            0.05,
        )?;

        let mut source = RandomSource::new(RngAlgorithm::Mt, 54);
        let mut l1_max = 0.0f64;
        let mut re_min = f64::INFINITY;
        let mut re_max = 0.0f64;
        for _ in 0..200 {
            let rho = sample_rdm(&mut source, 4, RdmMethod::Std)?;
            l1_max = l1_max.max(coherence_l1(&rho));
            let re = coherence_re(&rho)?;
            re_min = re_min.min(re);
            re_max = re_max.max(re);
        }
        b.at_most("coherence_l1_ceiling", l1_max, 3.0 + 1e-9)?;
        b.at_least("coherence_re_floor", re_min, 0.0)?;
        b.at_most("coherence_re_ceiling", re_max, 2.0 + 1e-9)?;
    }

    let passed = b.checks.iter().all(|c| c.pass);
    let n_pass = b.checks.iter().filter(|c| c.pass).count();
    let total = b.checks.len();
    writeln!(b.w, "# {n_pass}/{total} checks passed")?;
    Ok(SelftestReport {
        checks: b.checks,
        passed,
    })
}
