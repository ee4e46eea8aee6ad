//! `rqobj` — seeded sampling of random probability vectors, unitaries, and
//! quantum states, with reproducible CSV experiments.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 self-test
//! failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rqobj::harness::{
    run_coherence_exp, run_eigenphase_exp, run_fidelity_exp, run_moments, run_ppt_exp, run_sample,
    run_selftest, ExperimentConfig, SampleObject,
};
use rqobj::rng::RngAlgorithm;
use rqobj::states::{RdmMethod, RsvMethod};
use rqobj::unitary::RuMethod;
use rqobj::{Error, Result};

#[derive(Parser)]
#[command(
    name = "rqobj",
    version,
    about = "Seeded sampling of random probability vectors, Haar unitaries, and quantum states",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one sampled object per CSV row
    Sample(SampleArgs),
    /// Trace running moments and lag-1 correlations of the raw uniform stream
    Moments(MomentsArgs),
    /// Run a named statistical experiment
    #[command(subcommand)]
    Experiment(Experiment),
    /// Run the fixed-seed validation battery (exit 3 if any check fails)
    Selftest,
}

#[derive(Args)]
struct CommonArgs {
    /// Core generator: mt, gnu
    #[arg(long, default_value = "mt")]
    rng: RngAlgorithm,
    /// Master seed (required: runs are always reproducible)
    #[arg(long)]
    seed: u64,
    /// Output file (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Object class: rn, rpv, ru, rsv, rdm
    #[arg(long)]
    object: SampleObject,
    /// Sampling method (defaults: rpv=zhsl, ru=gso, rsv=std, rdm=std; rn takes none)
    #[arg(long)]
    method: Option<String>,
    /// Object dimension (for rn: draws per row)
    #[arg(long)]
    dim: usize,
    /// Number of rows
    #[arg(long)]
    samples: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MomentsArgs {
    /// Number of uniform draws to stream
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand)]
enum Experiment {
    /// Mean squared overlap of independent pure-state pairs vs dimension
    Fidelity(FidelityArgs),
    /// Pooled eigenphase uniformity and level-repulsion statistics
    Eigenphases(EigenphasesArgs),
    /// Fraction of states with positive partial transpose vs dimension
    Ppt(PptArgs),
    /// Mean coherence quantifiers vs dimension
    Coherence(CoherenceArgs),
}

#[derive(Args)]
struct FidelityArgs {
    /// State dimensions
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    dims: Vec<usize>,
    /// State pairs per dimension
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// State sampling method: gauss, std, ru
    #[arg(long, default_value = "std")]
    method: RsvMethod,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EigenphasesArgs {
    /// Unitary dimension
    #[arg(long, default_value_t = 20)]
    dim: usize,
    /// Unitaries to sample
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Unitary sampling method: gso, hhr, hurwitz
    #[arg(long, default_value = "gso")]
    method: RuMethod,
    /// Bins of the phase histogram (chi-square uses bins - 1 degrees of freedom)
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct PptArgs {
    /// Total dimensions (each even: states split as 2 x d/2)
    #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
    dims: Vec<usize>,
    /// States per dimension
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// State sampling method: std, ginibre, bures, ptrace
    #[arg(long, default_value = "std")]
    method: RdmMethod,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CoherenceArgs {
    /// State dimensions (each at least 2)
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
    dims: Vec<usize>,
    /// States per dimension
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// State sampling method: std, ginibre, bures, ptrace
    #[arg(long, default_value = "std")]
    method: RdmMethod,
    #[command(flatten)]
    common: CommonArgs,
}

/// Buffered writer for `--out`, or stdout when absent.
fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Sample(args) => {
            let cfg = ExperimentConfig {
                object: args.object,
                method: args.method,
                algorithm: args.common.rng,
                dim: args.dim,
                samples: args.samples,
                seed: args.common.seed,
            };
            let mut w = open_output(&args.common.out)?;
            run_sample(&cfg, &mut w)?;
            w.flush()?;
        }
        Command::Moments(args) => {
            let cfg = ExperimentConfig {
                object: SampleObject::Rn,
                method: None,
                algorithm: args.common.rng,
                dim: 1,
                samples: args.samples,
                seed: args.common.seed,
            };
            let mut w = open_output(&args.common.out)?;
            run_moments(&cfg, &mut w)?;
            w.flush()?;
        }
        Command::Experiment(which) => match which {
            Experiment::Fidelity(args) => {
                let mut w = open_output(&args.common.out)?;
                run_fidelity_exp(
                    args.common.rng,
                    &args.dims,
                    args.samples,
                    args.method,
                    args.common.seed,
                    &mut w,
                )?;
                w.flush()?;
            }
            Experiment::Eigenphases(args) => {
                let mut w = open_output(&args.common.out)?;
                run_eigenphase_exp(
                    args.common.rng,
                    args.dim,
                    args.samples,
                    args.method,
                    args.bins,
                    args.common.seed,
                    &mut w,
                )?;
                w.flush()?;
            }
            Experiment::Ppt(args) => {
                let d_b: Vec<usize> = args
                    .dims
                    .iter()
                    .map(|&d| {
                        if d >= 2 && d % 2 == 0 {
                            Ok(d / 2)
                        } else {
                            Err(Error::Usage(format!(
                                "--dims entries are total dimensions of a 2 x (d/2) split and must be even and >= 2; got {d}"
                            )))
                        }
                    })
                    .collect::<Result<_>>()?;
                let mut w = open_output(&args.common.out)?;
                run_ppt_exp(
                    args.common.rng,
                    &d_b,
                    args.samples,
                    args.method,
                    args.common.seed,
                    &mut w,
                )?;
                w.flush()?;
            }
            Experiment::Coherence(args) => {
                let mut w = open_output(&args.common.out)?;
                run_coherence_exp(
                    args.common.rng,
                    &args.dims,
                    args.samples,
                    args.method,
                    args.common.seed,
                    &mut w,
                )?;
                w.flush()?;
            }
        },
        Command::Selftest => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let report = run_selftest(&mut w)?;
            w.flush()?;
            if !report.passed {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn exit_code_for(error: &Error) -> u8 {
    if error.is_numerical() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; those print to stdout and
            // exit 0, real usage errors go to stderr and exit 1.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
