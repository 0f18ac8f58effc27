//! Degree-truncated Jacobi diagrams modulo AS and IHX.
//!
//! Diagrams are strutless uni-trivalent graphs with cyclically oriented
//! trivalent vertices and colored legs. A [`SpaceBasis`] enumerates the
//! connected ones up to a degree cap and row-reduces the AS/IHX relations;
//! a [`DiagramElement`] is a polynomial in the surviving connected classes
//! with exact rational coefficients. Everything of degree above the cap is
//! dropped silently.
//!
//! ```
//! use lmo_splice::diagrams::{build_space, named};
//! use lmo_splice::rational::frac;
//!
//! let b = build_space(&["k"], 4).unwrap();
//! let k = b.color("k").unwrap();
//! let w2 = named::wheel(&b, k, 2).unwrap();
//! let glued = w2.pair(&w2, &[k]).unwrap();
//! let theta2 = named::theta_two(&b).unwrap();
//! assert_eq!(glued, theta2.scale(&frac(2, 1)));
//! ```

mod element;
mod graph;
pub mod named;
mod space;

pub use element::{DiagramElement, Monomial, QuadraticForm};
pub use graph::{CanonKey, ColorId, DiagramGraph, End, Loc};
pub use space::{build_space, ConnectedClass, SpaceBasis, DEGREE_BOUND};
