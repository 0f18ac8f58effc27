//! Exact low-degree LMO invariants of rational homology spheres obtained by
//! splicing two framed knots.
//!
//! The crate is organized bottom-up:
//!
//! * [`dedekind`]: sawtooth function, Dedekind sums and symbols.
//! * [`sl2z`]: unimodular integer matrices and their factorization into the
//!   generators `(a, -1; 1, 0)`.
//! * [`tridiag`]: tridiagonal matrices with unit off-diagonal, their
//!   signatures, inverse corners and the Kirby–Melvin identity.
//! * [`diagrams`]: a degree-truncated algebra of Jacobi diagrams modulo AS
//!   and IHX, with gluing, Gaussian operators and the wheels element.
//! * [`splice`]: the splicing formulas themselves, in closed form and through
//!   the diagram engine.
//! * [`checks`]: seeded property sweeps shared by the CLI `verify` command.
//!
//! All arithmetic is exact; there is no floating point anywhere in the math
//! core.

pub mod checks;
pub mod dedekind;
pub mod diagrams;
mod error;
pub mod rational;
pub mod sl2z;
pub mod splice;
pub mod tridiag;

pub use error::{Error, Result};
pub use rational::Q;
