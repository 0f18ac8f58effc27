//! The specific diagrams and elements the splicing formulas refer to.
//!
//! * `θ`: the closed two-vertex diagram.
//! * `ω_n`: the wheel with `n` spokes.
//! * `Θ₂`: the closed degree-4 "necklace", two 2-wheels glued along their
//!   legs, so that `⟨ω₂, ω₂⟩ = 2 Θ₂`.
//! * `T₁`: the degree-4 two-legged "barbell", two 2-wheels joined by one
//!   edge; gluing its two legs gives exactly `Θ₂`.
//! * the crossed closure of `ω₄` (opposite spokes glued), equal to `Θ₂ / 2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::element::DiagramElement;
use super::graph::{ColorId, DiagramGraph, End};
use super::space::SpaceBasis;
use crate::{Error, Q, Result};

/// Wheel with `n ≥ 2` spokes of color `c`; vertex `i` is `(i-1, i+1, leg)`.
pub fn wheel_graph(c: ColorId, n: usize) -> DiagramGraph {
    assert!(n >= 2, "a wheel needs at least two spokes");
    DiagramGraph::from_ends(
        (0..n)
            .map(|i| [End::slot((i + n - 1) % n, 1), End::slot((i + 1) % n, 0), End::Leg(c)])
            .collect(),
    )
}

pub fn theta_graph() -> DiagramGraph {
    let mut g = wheel_graph(ColorId(0), 2);
    g.glue_legs((0, 2), (1, 2));
    g
}

pub fn theta_two_graph() -> DiagramGraph {
    let mut g = barbell_graph(ColorId(0));
    g.glue_legs((1, 2), (3, 2));
    g
}

/// Two 2-wheels joined through their first legs; the free legs sit at
/// `(1, 2)` and `(3, 2)`.
pub fn barbell_graph(c: ColorId) -> DiagramGraph {
    let w = wheel_graph(c, 2);
    let mut g = w.disjoint_union(&w);
    g.glue_legs((0, 2), (2, 2));
    g
}

/// `ω₄` with opposite spokes glued.
pub fn crossed_graph() -> DiagramGraph {
    let mut g = wheel_graph(ColorId(0), 4);
    g.glue_legs((0, 2), (2, 2));
    g.glue_legs((1, 2), (3, 2));
    g
}

fn fits(b: &SpaceBasis, degree: usize) -> bool {
    degree <= b.cap()
}

fn check_color(b: &SpaceBasis, c: ColorId) -> Result<()> {
    if (c.0 as usize) < b.colors().len() {
        Ok(())
    } else {
        Err(Error::UnknownColor(format!("#{}", c.0)))
    }
}

/// `θ`, or zero when the cap is below 2.
pub fn theta(b: &Arc<SpaceBasis>) -> Result<DiagramElement> {
    if !fits(b, 2) {
        return Ok(DiagramElement::zero(b));
    }
    DiagramElement::from_graph(b, &theta_graph())
}

/// `ω_n` of color `c`, or zero above the cap. Odd wheels vanish by AS.
pub fn wheel(b: &Arc<SpaceBasis>, c: ColorId, n: usize) -> Result<DiagramElement> {
    check_color(b, c)?;
    if !fits(b, n) {
        return Ok(DiagramElement::zero(b));
    }
    DiagramElement::from_graph(b, &wheel_graph(c, n))
}

pub fn theta_two(b: &Arc<SpaceBasis>) -> Result<DiagramElement> {
    if !fits(b, 4) {
        return Ok(DiagramElement::zero(b));
    }
    DiagramElement::from_graph(b, &theta_two_graph())
}

pub fn t_one(b: &Arc<SpaceBasis>, c: ColorId) -> Result<DiagramElement> {
    check_color(b, c)?;
    if !fits(b, 4) {
        return Ok(DiagramElement::zero(b));
    }
    DiagramElement::from_graph(b, &barbell_graph(c))
}

pub fn crossed(b: &Arc<SpaceBasis>) -> Result<DiagramElement> {
    if !fits(b, 4) {
        return Ok(DiagramElement::zero(b));
    }
    DiagramElement::from_graph(b, &crossed_graph())
}

/// Modified Bernoulli numbers `b_{2m}` for `2m ≤ max`, from
/// `Σ b_{2m} x^{2m} = ½ log(sinh(x/2) / (x/2))`. Entry `i` holds `b_i`
/// (zero for odd `i`).
pub fn modified_bernoulli(max: usize) -> Vec<Q> {
    // f = sinh(x/2)/(x/2) = Σ x^{2n} / (4^n (2n+1)!)
    let mut f = vec![Q::zero(); max + 1];
    let mut fact = BigInt::one();
    let mut four = BigInt::one();
    for n in 0..=max / 2 {
        if n > 0 {
            fact *= BigInt::from(2 * n) * BigInt::from(2 * n + 1);
            four *= 4;
        }
        f[2 * n] = Q::new(BigInt::one(), &four * &fact);
    }
    // g = log f via n g_n = n f_n - Σ_{k<n} k g_k f_{n-k}
    let mut g = vec![Q::zero(); max + 1];
    for n in 1..=max {
        let mut acc = Q::from_integer(n.into()) * &f[n];
        for k in 1..n {
            acc -= Q::from_integer(k.into()) * &g[k] * &f[n - k];
        }
        g[n] = acc / Q::from_integer(n.into());
    }
    g.into_iter().map(|x| x / Q::from_integer(2.into())).collect()
}

/// The wheels element `Ω = exp(Σ b_{2m} ω_{2m})` of color `c`.
pub fn omega_big(b: &Arc<SpaceBasis>, c: ColorId) -> Result<DiagramElement> {
    check_color(b, c)?;
    let bern = modified_bernoulli(b.cap());
    let mut log = DiagramElement::zero(b);
    for n in (2..=b.cap()).step_by(2) {
        log = log.add(&wheel(b, c, n)?.scale(&bern[n]))?;
    }
    log.exp()
}

/// `ω = ⟨Ω, Ω⟩`. In a space without colors the pairing is done in an
/// auxiliary one-color space and the closed result transferred back.
pub fn omega_small(b: &Arc<SpaceBasis>) -> Result<DiagramElement> {
    if b.colors().is_empty() {
        let aux = super::build_space(&["k"], b.cap())?;
        return omega_small(&aux)?.transfer(b);
    }
    let k = ColorId(0);
    let big = omega_big(b, k)?;
    big.pair(&big, &[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn bernoulli_values() {
        let b = modified_bernoulli(6);
        assert_eq!(b[2], frac(1, 48));
        assert_eq!(b[4], frac(-1, 5760));
        assert!(b[1].is_zero() && b[3].is_zero());
        // b_6 = 1/362880, from the series of log(sinh(x/2)/(x/2))
        assert_eq!(b[6], frac(1, 362880));
    }

    #[test]
    fn named_graphs_are_consistent() {
        for g in [theta_graph(), theta_two_graph(), barbell_graph(ColorId(0)), crossed_graph()] {
            assert!(g.is_consistent(), "{g}");
            assert!(g.is_connected());
        }
        assert_eq!(barbell_graph(ColorId(0)).leg_count(), 2);
    }
}
