//! Splicing two framed knots in rational homology spheres.
//!
//! The gluing homeomorphism acts on the boundary torus in homology through a
//! unimodular matrix `(p, r; q, s)`. Closed forms give the Casson–Walker
//! invariant and the degree-four invariant `λ₂` for null-homologous knots;
//! the diagram engine evaluates the splicing formula itself and reproduces
//! both, and also handles knots with arbitrary rational self-linking.
//!
//! ```
//! use lmo_splice::splice::{casson_walker, splice_lmo_truncated, GluingMatrix, KnotRecord};
//! use lmo_splice::rational::{frac, q};
//!
//! let g = GluingMatrix::from_i64(1, 0, 3, 1).unwrap();
//! let unknot = KnotRecord::unknot();
//! assert_eq!(casson_walker(&g, &unknot, &unknot).unwrap(), frac(-1, 18));
//! let z = splice_lmo_truncated(&g, &unknot, &unknot, 5).unwrap();
//! assert_eq!(z.lambda_w, frac(-1, 18));
//! assert_eq!(z.lambda2, frac(-1, 1296));
//! # let _ = q(0);
//! ```

mod closed;
mod engine;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diagrams::DiagramElement;
use crate::rational::{fmt_q, int};
use crate::sl2z::Mat2Z;
use crate::{Error, Q, Result};

pub use closed::{
    casson_walker, hopf_chain, is_qhs, kappa, kappa_from_chain, kappa_routes, lambda2_splice, lens,
    linking_matrix, KappaRoutes, Parity,
};
pub use engine::{
    extract_invariants, rational_surgery, single_color_space, splice_lmo_general,
    splice_lmo_truncated, unwheel_frame, wheeled_invariant, FramedElement,
};

/// The homology action `(p, r; q, s)` of the gluing map, `ps - qr = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GluingMatrix {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl GluingMatrix {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let det = &p * &s - &q * &r;
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Self { p, q, r, s })
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    /// `p = s = 0`, `q = -r = 1`: meridians and parallels are exchanged.
    pub fn standard() -> Self {
        Self::from_i64(0, 1, -1, 0).expect("unimodular")
    }

    pub fn from_mat2(m: &Mat2Z) -> Result<Self> {
        Self::new(m.a11.clone(), m.a21.clone(), m.a12.clone(), m.a22.clone())
    }

    pub fn as_mat2(&self) -> Mat2Z {
        Mat2Z::new(self.p.clone(), self.r.clone(), self.q.clone(), self.s.clone())
    }

    /// The same splice seen with the two knots exchanged: `(s, r; q, p)`.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.s.clone(),
            q: self.q.clone(),
            r: self.r.clone(),
            s: self.p.clone(),
        }
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.p, self.r, self.q, self.s)
    }
}

/// Self-linking `u/v` of a framed knot, `v > 0`, `gcd(u, v) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramingFraction {
    u: BigInt,
    v: BigInt,
}

impl FramingFraction {
    pub fn new(u: BigInt, v: BigInt) -> Result<Self> {
        if !v.is_positive() || !u.gcd(&v).is_one() {
            return Err(Error::InvalidInput(format!("framing {u}/{v} is not reduced with v > 0")));
        }
        Ok(Self { u, v })
    }

    pub fn from_i64(u: i64, v: i64) -> Result<Self> {
        Self::new(u.into(), v.into())
    }

    /// The framing `0/1` of a null-homologous knot with its preferred parallel.
    pub fn null() -> Self {
        Self {
            u: BigInt::zero(),
            v: BigInt::one(),
        }
    }

    pub fn from_q(x: &Q) -> Self {
        Self {
            u: x.numer().clone(),
            v: x.denom().clone(),
        }
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn value(&self) -> Q {
        Q::new(self.u.clone(), self.v.clone())
    }

    pub fn is_null(&self) -> bool {
        self.u.is_zero()
    }
}

impl Default for FramingFraction {
    fn default() -> Self {
        Self::null()
    }
}

impl fmt::Display for FramingFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.u, self.v)
    }
}

/// Low-degree data of a framed knot `K` in a rational homology sphere `M`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnotRecord {
    /// `λ_W(M)`.
    pub ambient_lambda_w: Q,
    /// `λ₂(M)`.
    pub ambient_lambda2: Q,
    /// Conway coefficients of `K`.
    pub a2: Q,
    pub a4: Q,
    /// Coefficient of the two-legged degree-four diagram `T₁`.
    pub v_coeff: Q,
    pub framing: FramingFraction,
}

impl KnotRecord {
    /// The unknot in `S³`.
    pub fn unknot() -> Self {
        Self::default()
    }

    /// `Δ''(1) = 2 a₂`.
    pub fn alexander_second(&self) -> Q {
        &self.a2 * int(&BigInt::from(2))
    }

    /// `Δ⁗(1) = 24 (a₂ + a₄)`.
    pub fn alexander_fourth(&self) -> Q {
        (&self.a2 + &self.a4) * int(&BigInt::from(24))
    }

    pub(crate) fn require_null(&self) -> Result<()> {
        if self.framing.is_null() {
            Ok(())
        } else {
            Err(Error::NonTrivialFraming(self.framing.to_string()))
        }
    }
}

/// Invariants of a splice, optionally with the truncated `Z(M)` they were
/// read from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpliceResult {
    pub lambda_w: Q,
    pub lambda2: Q,
    pub raw: Option<DiagramElement>,
}

impl fmt::Display for SpliceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda_w = {}, lambda2 = {}", fmt_q(&self.lambda_w), fmt_q(&self.lambda2))
    }
}
