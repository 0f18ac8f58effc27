//! The splicing formula evaluated inside the diagram engine.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::closed::{is_qhs, kappa};
use super::{FramingFraction, GluingMatrix, KnotRecord, SpliceResult};
use crate::dedekind::symbol;
use crate::diagrams::{build_space, named, ColorId, DiagramElement, QuadraticForm, SpaceBasis};
use crate::rational::{ext_gcd, int, q};
use crate::{Error, Q, Result};

const KNOT_COLOR: ColorId = ColorId(0);

/// The shared one-color space `{k}` truncated at `cap`, built on first use.
pub fn single_color_space(cap: usize) -> Result<Arc<SpaceBasis>> {
    static SPACES: OnceLock<Mutex<HashMap<usize, Arc<SpaceBasis>>>> = OnceLock::new();
    let spaces = SPACES.get_or_init(Default::default);
    if let Some(b) = spaces.lock().expect("space lock").get(&cap) {
        return Ok(b.clone());
    }
    let b = build_space(&["k"], cap)?;
    Ok(spaces
        .lock()
        .expect("space lock")
        .entry(cap)
        .or_insert(b)
        .clone())
}

/// The degree-≤5 expansion of the wheeled invariant `Z^⟳(K)` of a
/// null-homologous knot:
///
/// `∅ + (λ_W/4) θ + (a₂b₂ - 2b₂² + λ₂) Θ₂ + (λ_W²/32) θ² + (λ_W/4) c θω₂
///  + (c²/2) ω₂² + c ω₂ + v T₁ + (b₄ - a₂/24 + a₂²/4 - a₄/2) ω₄`
///
/// with `c = b₂ - a₂/2`. Terms above the cap of `basis` are dropped.
pub fn wheeled_invariant(k: &KnotRecord, basis: &Arc<SpaceBasis>, color: ColorId) -> Result<DiagramElement> {
    k.require_null()?;
    if basis.cap() > 5 {
        return Err(Error::DegreeTooLarge {
            requested: basis.cap(),
            bound: 5,
        });
    }
    let bern = named::modified_bernoulli(4);
    let (b2, b4) = (&bern[2], &bern[4]);
    let lw = &k.ambient_lambda_w;
    let c = b2 - &k.a2 / q(2);

    let theta = named::theta(basis)?;
    let w2 = named::wheel(basis, color, 2)?;
    let w4 = named::wheel(basis, color, 4)?;
    let terms = [
        (DiagramElement::one(basis), Q::one()),
        (theta.clone(), lw / q(4)),
        (
            named::theta_two(basis)?,
            &k.a2 * b2 - q(2) * b2 * b2 + &k.ambient_lambda2,
        ),
        (theta.product(&theta)?, lw * lw / q(32)),
        (theta.product(&w2)?, lw / q(4) * &c),
        (w2.product(&w2)?, &c * &c / q(2)),
        (w2, c.clone()),
        (named::t_one(basis, color)?, k.v_coeff.clone()),
        (
            w4,
            b4 - &k.a2 / q(24) + &k.a2 * &k.a2 / q(4) - &k.a4 / q(2),
        ),
    ];
    let mut out = DiagramElement::zero(basis);
    for (e, coeff) in terms {
        out = out.add(&e.scale(&coeff))?;
    }
    Ok(out)
}

/// A strutless element together with the strut exponent it stands for.
#[derive(Debug, Clone, PartialEq)]
pub struct FramedElement {
    pub element: DiagramElement,
    pub form: QuadraticForm,
}

/// Passes between the wheeled invariant of a knot with self-linking `φ` and
/// its unframed version: the element is multiplied by `exp(φθ/48)` and the
/// strut part `-(φ/2)(k, k)` is recorded separately.
pub fn unwheel_frame(e: &DiagramElement, phi: &Q) -> Result<FramedElement> {
    let b = e.basis();
    let shift = named::theta(b)?.scale(&(phi / q(48))).exp()?;
    let form = if b.colors().is_empty() {
        QuadraticForm::new()
    } else {
        QuadraticForm::diagonal(KNOT_COLOR, -phi / q(2))
    };
    Ok(FramedElement {
        element: e.product(&shift)?,
        form,
    })
}

/// `ω exp(κθ/48) ⟨∂_{D₁}(z₁)|_{k → f k}, ∂_{D₂}(z₂)⟩` with
/// `D_i = exp(c_i (k, k))`.
fn glue(
    z1: &DiagramElement,
    z2: &DiagramElement,
    c1: &Q,
    c2: &Q,
    factor: &Q,
    kappa: &Q,
) -> Result<DiagramElement> {
    let b = z1.basis();
    let k = KNOT_COLOR;
    let left = z1
        .apply_gaussian(&QuadraticForm::diagonal(k, c1.clone()))?
        .relabel_scale(k, k, factor)?;
    let right = z2.apply_gaussian(&QuadraticForm::diagonal(k, c2.clone()))?;
    let paired = left.pair(&right, &[k])?;
    let shift = named::theta(b)?.scale(&(kappa / q(48))).exp()?;
    named::omega_small(b)?.product(&shift)?.product(&paired)
}

/// The splicing formula for null-homologous knots, evaluated in the
/// diagram engine; `cap` must be 4 or 5.
pub fn splice_lmo_truncated(g: &GluingMatrix, k1: &KnotRecord, k2: &KnotRecord, cap: usize) -> Result<SpliceResult> {
    k1.require_null()?;
    k2.require_null()?;
    if g.r.is_zero() {
        return Err(Error::NotQhs);
    }
    if !(4..=5).contains(&cap) {
        return Err(Error::InvalidInput(format!("cap must be 4 or 5, got {cap}")));
    }
    let b = single_color_space(cap)?;
    let z1 = wheeled_invariant(k1, &b, KNOT_COLOR)?;
    let z2 = wheeled_invariant(k2, &b, KNOT_COLOR)?;
    let (p, r, s) = (int(&g.p), int(&g.r), int(&g.s));
    let exponent = -symbol(g.p.clone(), g.r.clone())? + (&p + &s) / &r;
    let two_r = &r * q(2);
    let z = glue(&z1, &z2, &(-&p / &two_r), &(-&s / &two_r), &(-Q::one() / &r), &exponent)?;
    let (lambda_w, lambda2) = extract_invariants(&z)?;
    Ok(SpliceResult {
        lambda_w,
        lambda2,
        raw: Some(z),
    })
}

/// The splicing formula for knots of arbitrary self-linking. `z1bar` and
/// `z2bar` are the unframed wheeled invariants, strutless, in the one-color
/// space of [`single_color_space`] (or any space whose first color is the
/// knot color).
pub fn splice_lmo_general(
    g: &GluingMatrix,
    f1: &FramingFraction,
    f2: &FramingFraction,
    z1bar: &DiagramElement,
    z2bar: &DiagramElement,
) -> Result<DiagramElement> {
    let (ok, lambda) = is_qhs(g, f1, f2);
    if !ok {
        return Err(Error::NotQhs);
    }
    if z1bar.basis().colors().is_empty() {
        return Err(Error::InvalidInput("the space needs a knot color".into()));
    }
    let kappa = kappa(g, f1, f2)?;
    let (v1, v2) = (int(f1.v()), int(f2.v()));
    let tau1 = int(&(&g.q * f1.u() + &g.s * f1.v()));
    let tau2 = int(&(&g.q * f2.u() + &g.p * f2.v()));
    let two_lambda = &lambda * q(2);
    glue(
        z1bar,
        z2bar,
        &(-(&v1 * &tau2) / &two_lambda),
        &(-(&v2 * &tau1) / &two_lambda),
        &(-(&v1 * &v2) / &lambda),
        &kappa,
    )
}

/// Reads `(λ_W, λ₂)` off `Z(M) = ∅ + (λ_W/4) θ + λ₂ Θ₂ + (λ_W²/32) θ² + …`,
/// checking the `θ²` coefficient.
pub fn extract_invariants(z: &DiagramElement) -> Result<(Q, Q)> {
    let b = z.basis();
    if b.cap() < 4 {
        return Err(Error::InvalidInput("need a cap of at least 4".into()));
    }
    if !z.is_closed() {
        return Err(Error::InvalidInput("element has legs".into()));
    }
    if !z.constant_term().is_one() {
        return Err(Error::Consistency(format!(
            "constant term is {}, expected 1",
            z.constant_term()
        )));
    }
    let theta = named::theta(b)?;
    let lambda_w = z.coefficient_of(&theta)? * q(4);
    let lambda2 = z.coefficient_of(&named::theta_two(b)?)?;
    let sq = z.coefficient_of(&theta.product(&theta)?)?;
    if sq != &lambda_w * &lambda_w / q(32) {
        return Err(Error::Consistency(format!(
            "theta^2 coefficient {sq} does not match lambda_w = {lambda_w}"
        )));
    }
    Ok((lambda_w, lambda2))
}

/// `r/s`-surgery on a null-homologous knot, as the splice with the unknot in
/// `S³`. The auxiliary `(p, q)` with `ps - qr = 1` comes from the extended
/// Euclidean algorithm; the second choice `(p + r, q + s)` must give the
/// same result.
pub fn rational_surgery(k: &KnotRecord, r: i64, s: i64) -> Result<SpliceResult> {
    k.require_null()?;
    let (rb, sb) = (BigInt::from(r), BigInt::from(s));
    if r == 0 || s == 0 {
        return Err(Error::InvalidInput("surgery coefficient needs r, s nonzero".into()));
    }
    let (gcd, x, y) = ext_gcd(&sb, &rb);
    if !gcd.is_one() {
        return Err(Error::InvalidInput(format!("{r} and {s} are not coprime")));
    }
    // s x + r y = 1, so (p, q) = (x, -y)
    let g1 = GluingMatrix::new(x.clone(), -y.clone(), rb.clone(), sb.clone())?;
    let g2 = GluingMatrix::new(&x + &rb, -y + &sb, rb, sb)?;
    let unknot = KnotRecord::unknot();
    let a = splice_lmo_truncated(&g1, &unknot, k, 5)?;
    let b = splice_lmo_truncated(&g2, &unknot, k, 5)?;
    if a != b {
        return Err(Error::Consistency(format!(
            "surgery depends on the auxiliary choice: {a} vs {b}"
        )));
    }
    Ok(a)
}
