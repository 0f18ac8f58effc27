//! Sawtooth function, Dedekind sums and Dedekind symbols.
//!
//! For coprime `p, q` with `q != 0`,
//!
//! ```text
//! s(p, q) = sum_{k=1}^{|q|-1} ((k/q)) ((kp/q)),      S(p/q) = 12 sgn(q) s(p, q)
//! ```
//!
//! where `((x)) = x - floor(x) - 1/2` off the integers and `0` on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{ext_gcd, sgn_int, Q};
use crate::{Error, Result};

/// A pair `(p, q)` with `gcd(|p|, |q|) = 1` and `q != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoprimePair {
    p: BigInt,
    q: BigInt,
}

impl CoprimePair {
    /// Validates without touching the values; a non-coprime pair is an error.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() || !p.gcd(&q).is_one() {
            return Err(Error::InvalidPair {
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        Ok(Self { p, q })
    }

    /// Divides out the common factor explicitly. `(6, 4)` becomes `(3, 2)`.
    pub fn reduced(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return Self::new(p, q);
        }
        let g = p.gcd(&q);
        Self::new(&p / &g, &q / &g)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }
}

pub fn sawtooth(x: &Q) -> Q {
    if x.is_integer() {
        return Q::zero();
    }
    x - x.floor() - Q::new(BigInt::one(), BigInt::from(2))
}

/// The naive `O(|q|)` sum. Each term is `(2k - n)(2 (kp mod n) - n) / 4n^2`
/// with `n = |q|`, accumulated over the integers.
pub fn dedekind_sum(pair: &CoprimePair) -> Q {
    let n_big = pair.q.abs();
    if n_big.is_one() {
        return Q::zero();
    }
    let Some(n) = n_big.to_i64() else {
        // Beyond machine range the naive loop is hopeless anyway.
        return dedekind_sum_euclid(pair);
    };
    let p = pair.p.mod_floor(&n_big).to_i64().expect("reduced below |q|");
    let (n, p) = (n as i128, p as i128);
    let mut acc: i128 = 0;
    let mut kp = 0i128;
    for k in 1..n {
        kp += p;
        if kp >= n {
            kp -= n;
        }
        acc += (2 * k - n) * (2 * kp - n);
    }
    Q::new(BigInt::from(acc), BigInt::from(4 * n * n))
}

pub fn dedekind_symbol(pair: &CoprimePair) -> Q {
    dedekind_sum(pair) * Q::from_integer(BigInt::from(12 * sgn_int(&pair.q)))
}

/// Convenience wrapper validating `(p, q)` first.
pub fn symbol(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Q> {
    Ok(dedekind_symbol(&CoprimePair::new(p, q)?))
}

/// Fast path through reciprocity and periodicity, `O(log |q|)` steps.
///
/// Only used as an alternative evaluation; the naive sum stays the reference.
pub fn dedekind_symbol_euclid(pair: &CoprimePair) -> Q {
    // S(p/q) for q > 0, reducing p mod q, then S(p/q) = -S(q/p) + rhs.
    let mut sign = Q::one();
    let mut acc = Q::zero();
    let (mut p, mut q) = (pair.p.clone(), pair.q.clone());
    if q.is_negative() {
        // S(p/q) = S(-p/-q) as a function of the fraction.
        p = -p;
        q = -q;
    }
    loop {
        p = p.mod_floor(&q);
        if p.is_zero() {
            // q = 1 here by coprimality
            return acc;
        }
        // S(p/q) = p/q + q/p + 1/pq - 3 - S(q/p), with p, q > 0
        let pq = Q::new(p.clone(), q.clone());
        let rhs = &pq + pq.recip() + Q::new(BigInt::one(), &p * &q) - Q::from_integer(3.into());
        acc += &sign * rhs;
        sign = -sign;
        std::mem::swap(&mut p, &mut q);
    }
}

fn dedekind_sum_euclid(pair: &CoprimePair) -> Q {
    dedekind_symbol_euclid(pair) / Q::from_integer(BigInt::from(12 * sgn_int(&pair.q)))
}

/// Right-hand side of the reciprocity law for nonzero coprime `p, q`.
pub fn reciprocity_rhs(p: &BigInt, q: &BigInt) -> Q {
    let pq = Q::new(p.clone(), q.clone());
    &pq + pq.recip() + Q::new(BigInt::one(), p * q)
        - Q::from_integer(BigInt::from(3 * sgn_int(p) * sgn_int(q)))
}

/// A residue `p'` with `p p' ≡ 1 (mod q)`, for coprime `p, q`.
pub fn inverse_mod(p: &BigInt, q: &BigInt) -> BigInt {
    let (_, x, _) = ext_gcd(p, q);
    x.mod_floor(&q.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    /// Direct transcription of the definition through the sawtooth function.
    fn sum_by_definition(p: i64, q: i64) -> Q {
        (1..q.abs())
            .map(|k| sawtooth(&frac(k, q)) * sawtooth(&frac(k * p, q)))
            .sum()
    }

    fn s(p: i64, q: i64) -> Q {
        symbol(p, q).unwrap()
    }

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(&frac(5, 1)), Q::zero());
        assert_eq!(sawtooth(&frac(1, 3)), frac(-1, 6));
        assert_eq!(sawtooth(&frac(-1, 4)), frac(1, 4));
    }

    #[test]
    fn sum_values() {
        assert_eq!(dedekind_sum(&CoprimePair::new(1, 1).unwrap()), Q::zero());
        assert_eq!(dedekind_sum(&CoprimePair::new(1, 3).unwrap()), frac(1, 18));
        assert_eq!(dedekind_sum(&CoprimePair::new(2, 3).unwrap()), frac(-1, 18));
    }

    #[test]
    fn symbol_values() {
        assert_eq!(s(17, 1), Q::zero());
        assert_eq!(s(-4, 1), Q::zero());
        assert_eq!(s(1, 3), frac(2, 3));
        assert_eq!(s(-2, 3), frac(2, 3));
        assert_eq!(s(1, 2), Q::zero());
    }

    #[test]
    fn rejects_invalid_pairs() {
        assert!(matches!(CoprimePair::new(2, 4), Err(Error::InvalidPair { .. })));
        assert!(CoprimePair::new(1, 0).is_err());
        assert!(CoprimePair::new(0, 2).is_err());
        assert!(CoprimePair::new(0, 1).is_ok());
        let r = CoprimePair::reduced(6, -4).unwrap();
        assert_eq!((r.p(), r.q()), (&BigInt::from(3), &BigInt::from(-2)));
    }

    #[test]
    fn inverse_residue() {
        let inv = inverse_mod(&BigInt::from(5), &BigInt::from(7));
        assert_eq!(inv, BigInt::from(3));
    }

    proptest! {
        #[test]
        fn integer_accumulation_matches_definition(p in -60i64..60, q in -40i64..40) {
            prop_assume!(q != 0 && num_integer::gcd(p, q) == 1);
            let pair = CoprimePair::new(p, q).unwrap();
            prop_assert_eq!(dedekind_sum(&pair), sum_by_definition(p, q));
        }

        #[test]
        fn oddness_and_periodicity(p in -300i64..300, q in -150i64..150) {
            prop_assume!(q != 0 && num_integer::gcd(p, q) == 1);
            prop_assert_eq!(s(-p, q), -s(p, q));
            prop_assert_eq!(s(p + q, q), s(p, q));
        }

        #[test]
        fn reciprocity(p in -300i64..300, q in -300i64..300) {
            prop_assume!(p != 0 && q != 0 && num_integer::gcd(p, q) == 1);
            let lhs = s(p, q) + s(q, p);
            prop_assert_eq!(lhs, reciprocity_rhs(&BigInt::from(p), &BigInt::from(q)));
        }

        #[test]
        fn euclid_path_matches_naive(p in -500i64..500, q in -400i64..400) {
            prop_assume!(q != 0 && num_integer::gcd(p, q) == 1);
            let pair = CoprimePair::new(p, q).unwrap();
            prop_assert_eq!(dedekind_symbol_euclid(&pair), dedekind_symbol(&pair));
        }

        #[test]
        fn sawtooth_odd_and_periodic(n in -50i64..50, d in 1i64..30) {
            let x = frac(n, d);
            prop_assert_eq!(sawtooth(&(&x + Q::one())), sawtooth(&x));
            prop_assert_eq!(sawtooth(&-x.clone()), -sawtooth(&x));
        }
    }
}
