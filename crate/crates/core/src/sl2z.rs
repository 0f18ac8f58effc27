//! Integer 2×2 matrices and factorization into the generators
//! `G(a) = (a, -1; 1, 0)`.
//!
//! Every `G(a)` equals `T^a S` with `T = (1, 1; 0, 1)` and `S = (0, -1; 1, 0)`,
//! so a Euclidean reduction of the first column peels generators off the left
//! until an upper triangular `±T^b` remains, and that residue is rewritten
//! with `S^2 = -I = G(0)^2`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    pub a11: BigInt,
    pub a12: BigInt,
    pub a21: BigInt,
    pub a22: BigInt,
}

impl Mat2Z {
    pub fn new(
        a11: impl Into<BigInt>,
        a12: impl Into<BigInt>,
        a21: impl Into<BigInt>,
        a22: impl Into<BigInt>,
    ) -> Self {
        Self {
            a11: a11.into(),
            a12: a12.into(),
            a21: a21.into(),
            a22: a22.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `S = (0, -1; 1, 0)`.
    pub fn s() -> Self {
        Self::new(0, -1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    fn check_unimodular(&self) -> Result<()> {
        if self.is_unimodular() {
            Ok(())
        } else {
            Err(Error::NotUnimodular(self.det().to_string()))
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Self {
        Self::new(self.a22.clone(), -&self.a12, -&self.a21, self.a11.clone())
    }
}

impl Mul for &Mat2Z {
    type Output = Mat2Z;

    fn mul(self, o: &Mat2Z) -> Mat2Z {
        Mat2Z {
            a11: &self.a11 * &o.a11 + &self.a12 * &o.a21,
            a12: &self.a11 * &o.a12 + &self.a12 * &o.a22,
            a21: &self.a21 * &o.a11 + &self.a22 * &o.a21,
            a22: &self.a21 * &o.a12 + &self.a22 * &o.a22,
        }
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a11, self.a12, self.a21, self.a22)
    }
}

/// A nonempty word `a_1, ..., a_n` in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSequence(Vec<BigInt>);

impl GeneratorSequence {
    pub fn new(seq: Vec<BigInt>) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::InvalidInput("empty generator sequence".into()));
        }
        Ok(Self(seq))
    }

    pub fn from_i64(seq: &[i64]) -> Result<Self> {
        Self::new(seq.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for GeneratorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn generator(a: impl Into<BigInt>) -> Mat2Z {
    Mat2Z::new(a.into(), -1, 1, 0)
}

/// Left-to-right product `G(a_1) ⋯ G(a_n)`.
pub fn recompose(seq: &GeneratorSequence) -> Mat2Z {
    seq.0
        .iter()
        .fold(Mat2Z::identity(), |acc, a| &acc * &generator(a.clone()))
}

/// Some word with `recompose(decompose(m)) = m`.
pub fn decompose(m: &Mat2Z) -> Result<GeneratorSequence> {
    m.check_unimodular()?;
    let mut seq = Vec::new();
    let mut cur = m.clone();
    // G(a)^{-1} (x, y; z, w) = (z, w; a z - x, a w - y)
    while !cur.a21.is_zero() {
        let (x, z) = (&cur.a11, &cur.a21);
        // a = round(x / z), so that |a z - x| <= |z| / 2
        let two = BigInt::from(2);
        let a = (x * &two + z).div_floor(&(z * &two));
        let next = Mat2Z {
            a11: cur.a21.clone(),
            a12: cur.a22.clone(),
            a21: &a * &cur.a21 - &cur.a11,
            a22: &a * &cur.a22 - &cur.a12,
        };
        seq.push(a);
        cur = next;
    }
    // cur = ±T^b with a11 = a22 = ±1
    let zero = BigInt::zero();
    if cur.a11.is_one() {
        // T^b = G(b) S^{-1} = G(b) G(0)^3
        seq.push(cur.a12.clone());
        seq.extend([zero.clone(), zero.clone(), zero]);
    } else {
        // -T^{-b'} with cur = (-1, b'; 0, -1): equals G(-b') S = G(-b') G(0)
        seq.push(-&cur.a12);
        seq.push(zero);
    }
    GeneratorSequence::new(seq)
}

/// Integers `a_1..a_n` with `(p, r; q, s) = S G(a_n) ⋯ G(a_1)`.
///
/// Note the reversed index order on the right-hand side.
pub fn splice_factorization(g: &Mat2Z) -> Result<GeneratorSequence> {
    g.check_unimodular()?;
    let s_inv = Mat2Z::s().inverse_unimodular();
    Ok(decompose(&(&s_inv * g))?.reversed())
}

/// Inverse of [`splice_factorization`]: `S G(a_n) ⋯ G(a_1)`.
pub fn splice_recompose(seq: &GeneratorSequence) -> Mat2Z {
    &Mat2Z::s() * &recompose(&seq.reversed())
}
