//! Random probability vectors, Haar-random unitaries, and random quantum
//! states — with seeded, reproducible sampling and a statistics harness.
//!
//! The crate is organized as a pipeline of sampling layers, each consuming
//! the ones below it:
//!
//! - [`rng`]: two seedable core generators (Mersenne Twister and Marsaglia's
//!   KISS) behind one [`rng::RandomSource`] interface, plus the uniform /
//!   Gaussian / exponential / permutation primitives.
//! - [`simplex`]: six constructions of random probability vectors, three of
//!   which sample the uniform (flat Dirichlet) measure by independent
//!   routes.
//! - [`unitary`]: Haar-distributed unitaries via modified Gram–Schmidt,
//!   phase-corrected Householder QR, or composed elementary rotations.
//! - [`states`]: random pure states and random density matrices under the
//!   standard induced measures (spectral, Hilbert–Schmidt/Ginibre, Bures,
//!   partial-trace).
//! - [`linalg`]: the dense complex-matrix kernels the above need — a Jacobi
//!   eigensolver, eigenphases of unitaries, partial trace/transpose.
//! - [`measures`]: fidelity, von Neumann entropy, coherence quantifiers,
//!   and the positive-partial-transpose test.
//! - [`harness`]: experiment drivers that turn all of the above into
//!   reproducible CSV artifacts and self-checks; the `rqobj` CLI is a thin
//!   wrapper around it.
//!
//! Every sampler documents the order in which it consumes draws from its
//! [`rng::RandomSource`], so any sampled object is pinned exactly by the
//! generator name and the seed.
//!
//! ```
//! use rqobj::rng::{RandomSource, RngAlgorithm};
//! use rqobj::states::{sample_rdm, RdmMethod};
//!
//! let mut source = RandomSource::new(RngAlgorithm::Mt, 42);
//! let rho = sample_rdm(&mut source, 4, RdmMethod::Ginibre)?;
//! assert_eq!(rho.dim(), 4);
//! assert!((rho.matrix().trace()?.re - 1.0).abs() < 1e-12);
//! # Ok::<(), rqobj::Error>(())
//! ```

#![forbid(unsafe_code)]

mod error;

pub mod harness;
pub mod linalg;
pub mod measures;
pub mod rng;
pub mod simplex;
pub mod states;
pub mod unitary;

pub use error::{Error, Result};

/// The complex scalar type used throughout (re-exported from `num-complex`).
pub use num_complex::Complex64;

// The guide chapters under `book/` double as documentation tests: every
// fenced Rust block in them is compiled and run by `cargo test --doc`, so
// the book cannot drift from the API. The module only exists while rustdoc
// collects doctests.
#[cfg(doctest)]
pub mod book;
