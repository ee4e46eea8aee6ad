//! The experiment harness: configuration, deterministic CSV artifacts,
//! statistics helpers, the experiment drivers, and a fixed-seed self-test
//! battery.
//!
//! Everything here is deterministic given (algorithm, seed): artifacts
//! carry their full configuration as `# key=value` comments and contain no
//! timestamps, so re-running a configuration reproduces the bytes.

mod config;
mod csv;
mod experiments;
mod selftest;
mod stats;

pub use config::{ExperimentConfig, ResolvedMethod, SampleObject};
pub use experiments::{
    cyclic_spacings, run_coherence_exp, run_eigenphase_exp, run_fidelity_exp, run_moments,
    run_ppt_exp, run_sample, CoherenceReport, CoherenceRow, EigenphaseReport, FidelityReport,
    FidelityRow, MomentsReport, MomentsRow, PptReport, PptRow, SampleReport, REPULSION_CUT,
};
pub use selftest::{run_selftest, Direction, SelftestCheck, SelftestReport};
pub use stats::{
    chi2_uniform, exponential_decay_fit, histogram, ks_statistic, ks_two_sample, mean_and_se,
};
