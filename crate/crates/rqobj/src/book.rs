//! The user guide, one module per chapter of `book/`, so that `cargo test
//! --doc` compiles and runs every Rust snippet the book shows. Build the
//! rendered book with `mdbook build book/`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}

#[doc = include_str!("../../../book/src/probability-vectors.md")]
pub mod probability_vectors {}

#[doc = include_str!("../../../book/src/unitaries.md")]
pub mod unitaries {}

#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}

#[doc = include_str!("../../../book/src/measures.md")]
pub mod measures {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}

#[doc = include_str!("../../../book/src/validation.md")]
pub mod validation {}
