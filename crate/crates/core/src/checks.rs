//! Seeded property sweeps over the whole crate.
//!
//! Each suite returns a [`SuiteReport`] instead of panicking, so the same
//! code backs the command-line `verify` runner and the acceptance tests.
//! Every random choice comes from a `ChaCha8Rng` seeded by the caller.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dedekind::{dedekind_symbol, reciprocity_rhs, CoprimePair};
use crate::diagrams::{build_space, named, QuadraticForm};
use crate::rational::{frac, q};
use crate::sl2z::{decompose, generator, recompose, splice_factorization, splice_recompose, GeneratorSequence, Mat2Z};
use crate::splice::{
    casson_walker, is_qhs, kappa, kappa_routes, lambda2_splice, lens, rational_surgery, splice_lmo_truncated,
    FramingFraction, GluingMatrix, KnotRecord,
};
use crate::tridiag::{
    associated_mat2, dense_inverse, inverse_corners, kirby_melvin, signature_oracle, signature_recursive,
    signature_recursive_left, Tridiagonal,
};
use crate::{Error, Q, Result};

/// Names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 9] = [
    "reciprocity",
    "signatures",
    "kirby-melvin",
    "sl2-roundtrip",
    "diagram-dims",
    "d-omega",
    "fujita-consistency",
    "lambda2-consistency",
    "kappa-threeway",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failures, for display.
    pub samples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failed: 0,
            samples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.samples.len() < 5 {
                self.samples.push(describe());
            }
        }
    }

    fn check_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: {e}", describe())),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failed)", self.name, self.cases, self.failed)?;
        for s in &self.samples {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

/// Runs one named suite at its default size.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    Ok(match name {
        "reciprocity" => reciprocity(100),
        "signatures" => signatures(seed, 10_000),
        "kirby-melvin" => kirby_melvin_sweep(seed, 5, 3, 10_000),
        "sl2-roundtrip" => sl2_roundtrip(seed, 10_000),
        "diagram-dims" => diagram_dims(),
        "d-omega" => d_omega(&default_alphas()),
        "fujita-consistency" => fujita_consistency(seed, 200),
        "lambda2-consistency" => lambda2_consistency(seed, 200),
        "kappa-threeway" => kappa_threeway(seed, 500),
        other => return Err(Error::InvalidInput(format!("unknown suite `{other}`"))),
    })
}

pub fn default_alphas() -> Vec<Q> {
    vec![q(1), q(-1), frac(1, 2), q(3), frac(-5, 7)]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `S(p/q) + S(q/p) = p/q + q/p + 1/(pq) - 3 sgn(pq)` for every coprime pair
/// of nonzero integers with `|p|, |q| ≤ bound`, all sign combinations.
pub fn reciprocity(bound: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("reciprocity");
    for a in 1..=bound {
        for b in 1..=bound {
            if a.gcd(&b) != 1 {
                continue;
            }
            for (p, qq) in [(a, b), (-a, b), (a, -b), (-a, -b)] {
                let lhs = symbol_i64(p, qq) + symbol_i64(qq, p);
                let rhs = reciprocity_rhs(&p.into(), &qq.into());
                rep.check(lhs == rhs, || format!("({p}, {qq}): {lhs} != {rhs}"));
            }
        }
    }
    rep
}

fn symbol_i64(p: i64, qq: i64) -> Q {
    dedekind_symbol(&CoprimePair::new(p, qq).expect("coprime"))
}

fn random_rational_tridiagonal(rng: &mut ChaCha8Rng, max_len: usize) -> Tridiagonal {
    let len = rng.gen_range(1..=max_len);
    let diag = (0..len)
        .map(|_| {
            // a third of the entries are zero, so singular matrices are common
            if rng.gen_bool(1.0 / 3.0) {
                Q::zero()
            } else {
                frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
            }
        })
        .collect();
    Tridiagonal::new(diag).expect("nonempty")
}

/// Both peeling recursions against the congruence oracle.
pub fn signatures(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("signatures");
    let mut rng = rng(seed);
    for _ in 0..cases {
        let t = random_rational_tridiagonal(&mut rng, 10);
        let z = signature_oracle(&t);
        let (r, l) = (signature_recursive(&t), signature_recursive_left(&t));
        rep.check(r == z && l == z, || format!("{:?}: right {r}, left {l}, oracle {z}", t.diagonal()));
    }
    rep
}

/// Inverse corners against the full inverse, and `γ = 0` iff singular.
pub fn corners(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("inverse-corners");
    let mut rng = rng(seed);
    for _ in 0..cases {
        let t = random_rational_tridiagonal(&mut rng, 8);
        let gamma_zero = associated_mat2(&t).gamma.is_zero();
        let dense = dense_inverse(&t.to_dense());
        let ok = match (inverse_corners(&t), dense) {
            (Ok((a, b, c)), Some(inv)) => {
                let l = t.len() - 1;
                !gamma_zero && inv[0][0] == a && inv[0][l] == b && inv[l][0] == b && inv[l][l] == c
            }
            (Err(Error::SingularMatrix), None) => gamma_zero,
            _ => false,
        };
        rep.check(ok, || format!("{:?}", t.diagonal()));
    }
    rep
}

/// Kirby–Melvin exhaustively for `ℓ ≤ max_len`, `|c_i| ≤ bound`, then on
/// random integer tridiagonals with `ℓ ≤ 8`, `|c_i| ≤ 5`.
pub fn kirby_melvin_sweep(seed: u64, max_len: usize, bound: i64, random: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("kirby-melvin");
    let km = |rep: &mut SuiteReport, c: &[i64]| {
        let t = Tridiagonal::from_ints(c).expect("nonempty");
        rep.check_result(kirby_melvin(&t).map(|(l, r)| l == r), || format!("{c:?}"));
    };
    for len in 1..=max_len {
        let width = (2 * bound + 1) as usize;
        let mut c = vec![-bound; len];
        for _ in 0..width.pow(len as u32) {
            km(&mut rep, &c);
            for x in c.iter_mut() {
                *x += 1;
                if *x <= bound {
                    break;
                }
                *x = -bound;
            }
        }
    }
    let mut rng = rng(seed);
    for _ in 0..random {
        let len = rng.gen_range(1..=8);
        let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
        km(&mut rep, &c);
    }
    rep
}

/// Random products of generators (`|a_i| ≤ 5`, `n ≤ 12`) survive both
/// factorizations.
pub fn sl2_roundtrip(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("sl2-roundtrip");
    let mut rng = rng(seed);
    for _ in 0..cases {
        let n = rng.gen_range(1..=12);
        let word: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let m = recompose(&GeneratorSequence::from_i64(&word).expect("nonempty"));
        let ok = decompose(&m).map(|s| recompose(&s) == m).unwrap_or(false)
            && splice_factorization(&m).map(|s| splice_recompose(&s) == m).unwrap_or(false);
        rep.check(ok, || format!("{m}"));
    }
    // the single-generator splice reads back as a one-term chain
    for a in -5..=5i64 {
        let g = &Mat2Z::s() * &generator(a);
        let ok = splice_factorization(&g).map(|s| splice_recompose(&s) == g).unwrap_or(false);
        rep.check(ok, || format!("S G({a})"));
    }
    rep
}

/// Closed dimensions `(1, 0, 1, 0, 2)` through degree 4, and the five
/// connected one-color classes `θ, ω₂, Θ₂, T₁, ω₄` through degree 5.
pub fn diagram_dims() -> SuiteReport {
    let mut rep = SuiteReport::new("diagram-dims");
    rep.check_result(
        build_space(&[], 4).map(|b| b.closed_dimensions() == vec![1, 0, 1, 0, 2]),
        || "closed dimensions through degree 4".into(),
    );
    let classes = || -> Result<bool> {
        let b = build_space(&["k"], 5)?;
        let k = b.color("k")?;
        let named = [
            named::theta(&b)?,
            named::wheel(&b, k, 2)?,
            named::theta_two(&b)?,
            named::t_one(&b, k)?,
            named::wheel(&b, k, 4)?,
        ];
        let mut ids = Vec::new();
        for e in &named {
            let terms: Vec<_> = e.terms().collect();
            if terms.len() != 1 || terms[0].0.classes().len() != 1 {
                return Ok(false);
            }
            ids.push(terms[0].0.classes()[0]);
        }
        ids.sort();
        ids.dedup();
        Ok(ids.len() == 5 && b.classes().len() == 5)
    };
    rep.check_result(classes(), || "connected one-color classes through degree 5".into());
    rep
}

/// `∂_E(Ω) = exp(αθ/48) Ω` with `E = exp((α/2)(k, k))`, degree ≤ 5.
pub fn d_omega(alphas: &[Q]) -> SuiteReport {
    let mut rep = SuiteReport::new("d-omega");
    let run = |alpha: &Q| -> Result<bool> {
        let b = build_space(&["k"], 5)?;
        let k = b.color("k")?;
        let omega = named::omega_big(&b, k)?;
        let lhs = omega.apply_gaussian(&QuadraticForm::diagonal(k, alpha / q(2)))?;
        let rhs = named::theta(&b)?.scale(&(alpha / q(48))).exp()?.product(&omega)?;
        Ok(lhs == rhs)
    };
    for a in alphas {
        rep.check_result(run(a), || format!("alpha = {a}"));
    }
    rep
}

/// All `(p, q, r, s)` with `ps - qr = 1`, entries bounded by `bound`.
pub fn gluings(bound: i64) -> Vec<GluingMatrix> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for qq in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    if p * s - qq * r == 1 {
                        out.push(GluingMatrix::from_i64(p, qq, r, s).expect("unimodular"));
                    }
                }
            }
        }
    }
    out
}

fn small_rational(rng: &mut ChaCha8Rng) -> Q {
    frac(rng.gen_range(-7..=7), rng.gen_range(1..=6))
}

/// A random null-framed record with small rational entries.
pub fn random_record(rng: &mut ChaCha8Rng) -> KnotRecord {
    KnotRecord {
        ambient_lambda_w: small_rational(rng),
        ambient_lambda2: small_rational(rng),
        a2: small_rational(rng),
        a4: small_rational(rng),
        v_coeff: small_rational(rng),
        framing: FramingFraction::null(),
    }
}

/// Random admissible splices: `|entries| ≤ 7`, `r ≠ 0`, random records.
pub fn splice_corpus(seed: u64, cases: usize) -> Vec<(GluingMatrix, KnotRecord, KnotRecord)> {
    let all: Vec<GluingMatrix> = gluings(7).into_iter().filter(|g| !g.r.is_zero()).collect();
    let mut rng = rng(seed);
    (0..cases)
        .map(|_| {
            let g = all[rng.gen_range(0..all.len())].clone();
            (g, random_record(&mut rng), random_record(&mut rng))
        })
        .collect()
}

/// The engine's `λ_W` against the closed formula.
pub fn fujita_consistency(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("fujita-consistency");
    for (g, k1, k2) in splice_corpus(seed, cases) {
        let r = splice_lmo_truncated(&g, &k1, &k2, 5)
            .and_then(|z| Ok(z.lambda_w == casson_walker(&g, &k1, &k2)?));
        rep.check_result(r, || format!("{g} {k1:?} {k2:?}"));
    }
    rep
}

/// The engine's `λ₂` against the closed formula.
pub fn lambda2_consistency(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("lambda2-consistency");
    for (g, k1, k2) in splice_corpus(seed, cases) {
        let r = splice_lmo_truncated(&g, &k1, &k2, 5)
            .and_then(|z| Ok(z.lambda2 == lambda2_splice(&g, &k1, &k2)?));
        rep.check_result(r, || format!("{g} {k1:?} {k2:?}"));
    }
    rep
}

fn random_framing(rng: &mut ChaCha8Rng) -> FramingFraction {
    loop {
        let u: i64 = rng.gen_range(-7..=7);
        let v: i64 = rng.gen_range(1..=6);
        if let Ok(f) = FramingFraction::from_i64(u, v) {
            return f;
        }
    }
}

/// Three routes to `κ` on random framed gluings with `λ ≠ 0`, then
/// `κ = -S(p/r) + (p+s)/r` for every null-framed gluing with `|entries| ≤ 5`.
pub fn kappa_threeway(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("kappa-threeway");
    let all = gluings(7);
    let mut rng = rng(seed);
    let mut done = 0;
    while done < cases {
        let g = &all[rng.gen_range(0..all.len())];
        let (f1, f2) = (random_framing(&mut rng), random_framing(&mut rng));
        if !is_qhs(g, &f1, &f2).0 {
            continue;
        }
        done += 1;
        let r = kappa_routes(g, &f1, &f2).map(|k| k.branch == k.tridiagonal && k.alternate == k.tridiagonal);
        rep.check_result(r, || format!("{g} {f1} {f2}"));
    }
    let null = FramingFraction::null();
    for g in gluings(5) {
        if g.r.is_zero() {
            continue;
        }
        let r = (|| -> Result<bool> {
            let (p, r, s) = (Q::from_integer(g.p.clone()), Q::from_integer(g.r.clone()), Q::from_integer(g.s.clone()));
            let expect = -crate::dedekind::symbol(g.p.clone(), g.r.clone())? + (p + s) / r;
            Ok(kappa(&g, &null, &null)? == expect)
        })();
        rep.check_result(r, || format!("null framing {g}"));
    }
    rep
}

/// Standard splices: `λ_W` is additive and `λ₂` picks up `Δ''₁ Δ''₂ / 8`,
/// through both the closed forms and the engine, over a sweep of records.
pub fn standard_splice(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("standard-splice");
    let mut rng = rng(seed);
    let gs = [GluingMatrix::standard(), GluingMatrix::from_i64(0, -1, 1, 0).expect("unimodular")];
    for i in 0..cases {
        let g = &gs[i % 2];
        let (k1, k2) = (random_record(&mut rng), random_record(&mut rng));
        let lw = &k1.ambient_lambda_w + &k2.ambient_lambda_w;
        let l2 = &k1.ambient_lambda2 + &k2.ambient_lambda2 + k1.alexander_second() * k2.alexander_second() / q(8);
        let r = (|| -> Result<bool> {
            let z = splice_lmo_truncated(g, &k1, &k2, 5)?;
            Ok(casson_walker(g, &k1, &k2)? == lw
                && lambda2_splice(g, &k1, &k2)? == l2
                && z.lambda_w == lw
                && z.lambda2 == l2)
        })();
        rep.check_result(r, || format!("{g} {k1:?} {k2:?}"));
    }
    rep
}

/// Lens spaces `L(r, s)` for `1 ≤ r ≤ r_max` and every `s` coprime to `r` in
/// `1..=r`: the closed form against `-S(s/r)/12` and `(1/r² - 1)/1152`, and
/// against the engine (surgery on the unknot).
pub fn lens_sweep(r_max: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("lens");
    for r in 1..=r_max {
        for s in 1..=r {
            if r.gcd(&s) != 1 {
                continue;
            }
            let run = || -> Result<bool> {
                let closed = lens(r, s)?;
                let engine = rational_surgery(&KnotRecord::unknot(), r, s)?;
                let expect_w = -symbol_i64(s, r) / q(12);
                let expect_2 = frac(1, 1152) * (frac(1, r * r) - q(1));
                Ok(closed.lambda_w == expect_w
                    && closed.lambda2 == expect_2
                    && engine.lambda_w == expect_w
                    && engine.lambda2 == expect_2)
            };
            rep.check_result(run(), || format!("L({r}, {s})"));
        }
    }
    rep
}

/// `rational_surgery` on random knots and slopes; the call itself compares
/// two auxiliary choices, and a third one `(p - r, q - s)` is compared here.
pub fn surgery_independence(seed: u64, cases: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("surgery-independence");
    let mut rng = rng(seed);
    let mut done = 0;
    while done < cases {
        let r: i64 = rng.gen_range(-9..=9);
        let s: i64 = rng.gen_range(-9..=9);
        if r == 0 || s == 0 || r.gcd(&s) != 1 {
            continue;
        }
        done += 1;
        let k = random_record(&mut rng);
        let run = || -> Result<bool> {
            let base = rational_surgery(&k, r, s)?;
            let (_, x, y) = crate::rational::ext_gcd(&BigInt::from(s), &BigInt::from(r));
            let g = GluingMatrix::new(x - BigInt::from(r), -y - BigInt::from(s), r.into(), s.into())?;
            let third = splice_lmo_truncated(&g, &KnotRecord::unknot(), &k, 5)?;
            Ok(third == base && base.lambda_w == casson_walker(&g, &KnotRecord::unknot(), &k)?)
        };
        rep.check_result(run(), || format!("{k:?} r = {r}, s = {s}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in [
            reciprocity(12),
            signatures(1, 200),
            corners(1, 200),
            kirby_melvin_sweep(1, 3, 2, 200),
            sl2_roundtrip(1, 200),
            kappa_threeway(1, 50),
            standard_splice(1, 10),
            lens_sweep(6),
            surgery_independence(1, 5),
        ] {
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 0).is_err());
    }
}
