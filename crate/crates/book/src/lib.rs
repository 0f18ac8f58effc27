//! The guide lives in `book/src` as plain mdbook chapters. Each chapter is
//! pulled in as the docs of an empty module so that `cargo test --doc`
//! compiles and runs every listing against the real crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/dedekind.md")]
pub mod dedekind {}
#[doc = include_str!("../../../book/src/sl2z.md")]
pub mod sl2z {}
#[doc = include_str!("../../../book/src/tridiagonal.md")]
pub mod tridiagonal {}
#[doc = include_str!("../../../book/src/diagrams.md")]
pub mod diagrams {}
#[doc = include_str!("../../../book/src/splicing.md")]
pub mod splicing {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
