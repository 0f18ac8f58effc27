//! Exact rationals and the handful of integer helpers used throughout.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision reduced fraction. The only number type of the math core.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Sign with `sgn(0) = 0`.
pub fn sgn(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn sgn_int(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Parses `num/den` or `num`; the result is reduced.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Renders `num/den`, or `num` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("6/-4").unwrap(), frac(-3, 2));
        assert_eq!(fmt_q(&parse_q(" -7 ").unwrap()), "-7");
        assert_eq!(fmt_q(&frac(2, 6)), "1/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn sign_of_zero() {
        assert_eq!(sgn(&Q::zero()), 0);
        assert_eq!(sgn(&frac(-1, 5)), -1);
    }

    #[test]
    fn bezout() {
        let (g, x, y) = ext_gcd(&BigInt::from(-4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(BigInt::from(-4) * x + BigInt::from(6) * y, g);
    }
}
