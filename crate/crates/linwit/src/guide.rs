//! The user guide, embedded chapter by chapter from `book/src/`.
//!
//! The same Markdown renders as an mdbook (`mdbook build book`) and as the
//! modules below, so every Rust snippet in the guide runs under
//! `cargo test --doc` — the book cannot drift from the code it documents.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/grammars.md")]
pub mod grammars {}

#[doc = include_str!("../../../book/src/witness.md")]
pub mod witness {}

#[doc = include_str!("../../../book/src/semilinear.md")]
pub mod semilinear {}

#[doc = include_str!("../../../book/src/refutation.md")]
pub mod refutation {}

#[doc = include_str!("../../../book/src/sweeps.md")]
pub mod sweeps {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
