//! Closed-form pieces: the QHS criterion, Hopf chains, `κ`, and the
//! splicing formulas for `λ_W` and `λ₂`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FramingFraction, GluingMatrix, KnotRecord, SpliceResult};
use crate::dedekind::symbol;
use crate::rational::{frac, int, q, sgn};
use crate::sl2z::{splice_factorization, GeneratorSequence};
use crate::tridiag::{signature_recursive, Tridiagonal};
use crate::{Error, Q, Result};

/// `λ = q u₁u₂ + r v₁v₂ + s u₂v₁ + p v₂u₁`; the splice is a rational
/// homology sphere iff `λ ≠ 0`.
pub fn is_qhs(g: &GluingMatrix, f1: &FramingFraction, f2: &FramingFraction) -> (bool, Q) {
    let (u1, v1, u2, v2) = (f1.u(), f1.v(), f2.u(), f2.v());
    let lambda = &g.q * u1 * u2 + &g.r * v1 * v2 + &g.s * u2 * v1 + &g.p * v2 * u1;
    (!lambda.is_zero(), int(&lambda))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Framings `a₁..aₙ` of the Hopf chain presenting the splice, with
/// `(p, r; q, s) = S G(aₙ) ⋯ G(a₁)`.
pub fn hopf_chain(g: &GluingMatrix) -> Result<(GeneratorSequence, Parity)> {
    let chain = splice_factorization(&g.as_mat2())?;
    let parity = if chain.len() % 2 == 0 { Parity::Even } else { Parity::Odd };
    Ok((chain, parity))
}

/// The linking matrix `Λ(u₁/v₁, a₁, …, aₙ, u₂/v₂)` of the two knots and the chain.
pub fn linking_matrix(g: &GluingMatrix, f1: &FramingFraction, f2: &FramingFraction) -> Result<Tridiagonal> {
    let (chain, _) = hopf_chain(g)?;
    chain_matrix(&chain, f1, f2)
}

fn chain_matrix(chain: &GeneratorSequence, f1: &FramingFraction, f2: &FramingFraction) -> Result<Tridiagonal> {
    let mut diag = vec![f1.value()];
    diag.extend(chain.as_slice().iter().map(int));
    diag.push(f2.value());
    Tridiagonal::new(diag)
}

/// The three independent evaluations of `κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaRoutes {
    /// Peeling `u₂/v₂` first (uses `τ₁`).
    pub branch: Q,
    /// Peeling `u₁/v₁` first (uses `τ₂`).
    pub alternate: Q,
    /// `3 ζ(Λ) - tr(Λ)` on the linking matrix.
    pub tridiagonal: Q,
}

pub fn kappa_routes(g: &GluingMatrix, f1: &FramingFraction, f2: &FramingFraction) -> Result<KappaRoutes> {
    let (ok, lambda) = is_qhs(g, f1, f2);
    if !ok {
        return Err(Error::NotQhs);
    }
    let tau1 = int(&(&g.q * f1.u() + &g.s * f1.v()));
    let tau2 = int(&(&g.q * f2.u() + &g.p * f2.v()));
    let framing_terms = f1.value() + f2.value();
    let (p, qq, r, s) = (int(&g.p), int(&g.q), int(&g.r), int(&g.s));
    let route = |tau: &Q, q0_factor: &Q| -> Result<Q> {
        let v = if g.q.is_zero() {
            q0_factor * (q(3 * sgn(&lambda) as i64) - &r)
        } else {
            symbol(g.s.clone(), g.q.clone())? - (&s + &p) / &qq
                + q(3 * (sgn(&(&qq * tau)) + sgn(&(&lambda * tau))) as i64)
        };
        Ok(v - &framing_terms)
    };
    Ok(KappaRoutes {
        branch: route(&tau1, &s)?,
        alternate: route(&tau2, &p)?,
        tridiagonal: kappa_from_chain(&hopf_chain(g)?.0, f1, f2)?,
    })
}

/// `3 ζ(Λ) - tr(Λ)` for an arbitrary chain; independent of which
/// factorization of the gluing matrix the chain comes from.
pub fn kappa_from_chain(chain: &GeneratorSequence, f1: &FramingFraction, f2: &FramingFraction) -> Result<Q> {
    let t = chain_matrix(chain, f1, f2)?;
    Ok(q(3 * signature_recursive(&t)) - t.trace())
}

/// `κ`, after checking that all three routes agree.
pub fn kappa(g: &GluingMatrix, f1: &FramingFraction, f2: &FramingFraction) -> Result<Q> {
    let k = kappa_routes(g, f1, f2)?;
    if k.branch != k.alternate || k.branch != k.tridiagonal {
        return Err(Error::Consistency(format!(
            "kappa routes disagree for {g}: {} / {} / {}",
            k.branch, k.alternate, k.tridiagonal
        )));
    }
    Ok(k.branch)
}

fn null_gluing(g: &GluingMatrix, k1: &KnotRecord, k2: &KnotRecord) -> Result<()> {
    k1.require_null()?;
    k2.require_null()?;
    if g.r.is_zero() {
        return Err(Error::NotQhs);
    }
    Ok(())
}

/// `λ_W(M₁) + λ_W(M₂) - S(p/r)/12 + (p/r) Δ''₁(1) + (s/r) Δ''₂(1)`.
pub fn casson_walker(g: &GluingMatrix, k1: &KnotRecord, k2: &KnotRecord) -> Result<Q> {
    null_gluing(g, k1, k2)?;
    let (p, r, s) = (int(&g.p), int(&g.r), int(&g.s));
    Ok(&k1.ambient_lambda_w + &k2.ambient_lambda_w - symbol(g.p.clone(), g.r.clone())? / q(12)
        + &p / &r * k1.alexander_second()
        + &s / &r * k2.alexander_second())
}

/// The eleven-term splicing formula for `λ₂`.
pub fn lambda2_splice(g: &GluingMatrix, k1: &KnotRecord, k2: &KnotRecord) -> Result<Q> {
    null_gluing(g, k1, k2)?;
    let (p, r, s) = (int(&g.p), int(&g.r), int(&g.s));
    let r2 = &r * &r;
    let inv_r2 = Q::one() / &r2;
    let pp = &p * &p / &r2;
    let ss = &s * &s / &r2;
    let (d1, d2) = (k1.alexander_second(), k2.alexander_second());
    let (e1, e2) = (k1.alexander_fourth(), k2.alexander_fourth());
    Ok(&k1.ambient_lambda2 + &k2.ambient_lambda2
        + frac(1, 1152) * (&inv_r2 - q(1))
        + frac(1, 96) * (q(1) - &inv_r2) * (&d1 + &d2)
        + frac(9, 16) * &pp * &d1
        + frac(9, 16) * &ss * &d2
        + frac(7, 32) * &pp * &d1 * &d1
        + frac(7, 32) * &ss * &d2 * &d2
        + frac(1, 8) * &inv_r2 * &d1 * &d2
        - frac(5, 96) * &pp * &e1
        - frac(5, 96) * &ss * &e2
        - &p / &r * &k1.v_coeff
        - &s / &r * &k2.v_coeff)
}

/// Closed form for the lens space `L(r, s)`: `λ_W = -S(s/r)/12` and
/// `λ₂ = (1/r² - 1)/1152`.
pub fn lens(r: i64, s: i64) -> Result<SpliceResult> {
    let (r, s) = (BigInt::from(r), BigInt::from(s));
    if r.is_zero() || !r.gcd(&s).is_one() {
        return Err(Error::InvalidInput(format!("lens space needs r != 0 and gcd(r, s) = 1, got ({r}, {s})")));
    }
    let lambda_w = -symbol(s, r.clone())? / q(12);
    let r2 = int(&(&r * &r));
    let lambda2 = frac(1, 1152) * (Q::one() / r2 - q(1));
    Ok(SpliceResult { lambda_w, lambda2, raw: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn null() -> FramingFraction {
        FramingFraction::null()
    }

    #[test]
    fn qhs_examples() {
        let std = GluingMatrix::standard();
        assert_eq!(is_qhs(&std, &null(), &null()), (true, q(-1)));
        let g = GluingMatrix::from_i64(1, 1, 0, 1).unwrap();
        assert_eq!(is_qhs(&g, &null(), &null()), (false, q(0)));
        let g = GluingMatrix::from_i64(1, 1, 1, 2).unwrap();
        let one = FramingFraction::from_i64(1, 1).unwrap();
        assert_eq!(is_qhs(&g, &one, &null()), (true, q(2)));
    }

    #[test]
    fn kappa_examples() {
        for r in [-4i64, -1, 2, 5] {
            let g = GluingMatrix::from_i64(1, 0, r, 1).unwrap();
            assert_eq!(kappa(&g, &null(), &null()).unwrap(), q(3 * r.signum() - r));
        }
        assert_eq!(kappa(&GluingMatrix::standard(), &null(), &null()).unwrap(), q(0));
    }

    #[test]
    fn lens_examples() {
        let l = lens(1, 1).unwrap();
        assert_eq!((l.lambda_w, l.lambda2), (q(0), q(0)));
        let l = lens(2, 1).unwrap();
        assert_eq!((l.lambda_w, l.lambda2), (q(0), frac(-1, 1536)));
        let l = lens(3, 1).unwrap();
        assert_eq!((l.lambda_w, l.lambda2), (frac(-1, 18), frac(-1, 1296)));
    }

    #[test]
    fn closed_form_examples() {
        let std = GluingMatrix::standard();
        let mut k = KnotRecord::unknot();
        k.a2 = q(1);
        assert_eq!(lambda2_splice(&std, &k, &k).unwrap(), frac(1, 2));
        let g = GluingMatrix::from_i64(1, 0, 1, 1).unwrap();
        assert_eq!(casson_walker(&g, &KnotRecord::unknot(), &k).unwrap(), q(2));
        let g = GluingMatrix::from_i64(1, 0, 3, 1).unwrap();
        let u = KnotRecord::unknot();
        assert_eq!(casson_walker(&g, &u, &u).unwrap(), frac(-1, 18));
        assert_eq!(lambda2_splice(&g, &u, &u).unwrap(), frac(-1, 1296));
        let mut framed = KnotRecord::unknot();
        framed.framing = FramingFraction::from_i64(1, 2).unwrap();
        assert!(matches!(casson_walker(&g, &framed, &u), Err(Error::NonTrivialFraming(_))));
        let bad = GluingMatrix::from_i64(1, 1, 0, 1).unwrap();
        assert_eq!(casson_walker(&bad, &u, &u), Err(Error::NotQhs));
    }
}
