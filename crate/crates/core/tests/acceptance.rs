//! One PASS/FAIL line per acceptance criterion, all exact.
//!
//! Run with `cargo test -p lmo-splice --test acceptance -- --nocapture` to
//! see the lines; the test fails if any criterion does.

use std::time::{Duration, Instant};

use lmo_splice::checks::{self, SuiteReport};
use lmo_splice::diagrams::build_space;
use lmo_splice::splice::{lens, rational_surgery, KnotRecord};
use lmo_splice::sl2z::{decompose, recompose, splice_factorization, splice_recompose, GeneratorSequence};
use lmo_splice::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

struct Line {
    id: usize,
    what: &'static str,
    report: SuiteReport,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Line {
    fn ok(&self) -> bool {
        self.report.passed() && self.budget.map_or(true, |b| self.elapsed <= b)
    }
}

fn timed(
    id: usize,
    what: &'static str,
    budget: Option<u64>,
    f: impl FnOnce() -> SuiteReport,
) -> Line {
    let start = Instant::now();
    let report = f();
    Line {
        id,
        what,
        report,
        elapsed: start.elapsed(),
        budget: budget.map(Duration::from_secs),
    }
}

fn merge(name: &str, parts: impl IntoIterator<Item = SuiteReport>) -> SuiteReport {
    let mut out = SuiteReport {
        name: name.to_string(),
        cases: 0,
        failed: 0,
        samples: Vec::new(),
    };
    for p in parts {
        out.cases += p.cases;
        out.failed += p.failed;
        out.samples.extend(p.samples.into_iter().map(|s| format!("[{}] {s}", p.name)));
    }
    out.samples.truncate(5);
    out
}

// random matrices from products of generators, plus the opposite-order
// convention: the splice chain reads as S G(a_n) ... G(a_1)
fn sl2_full(cases: usize) -> SuiteReport {
    let mut rep = checks::sl2_roundtrip(SEED, cases);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5);
    let mut convention = 0usize;
    let mut bad = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let word: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let m = recompose(&GeneratorSequence::from_i64(&word).unwrap());
        let chain = splice_factorization(&m).unwrap();
        let again = decompose(&m).unwrap();
        let ok = splice_recompose(&chain) == m && recompose(&again) == m;
        convention += 1;
        if !ok {
            bad.push(format!("{m}"));
        }
    }
    rep.cases += convention;
    rep.failed += bad.len();
    rep.samples.extend(bad.into_iter().take(5));
    rep
}

fn dims() -> SuiteReport {
    let mut rep = checks::diagram_dims();
    // the six strutless classes in degree ≤ 5 are ∅ plus five connected ones
    let six = build_space(&["k"], 5).map(|b| 1 + b.classes().len() == 6);
    rep.cases += 1;
    if !matches!(six, Ok(true)) {
        rep.failed += 1;
        rep.samples.push(format!("six-class count: {six:?}"));
    }
    rep
}

fn lens_full() -> SuiteReport {
    merge(
        "lens",
        [checks::lens_sweep(50), {
            let mut rep = SuiteReport {
                name: "lens-closed-vs-engine".into(),
                cases: 0,
                failed: 0,
                samples: Vec::new(),
            };
            for r in 1..=50i64 {
                let c = lens(r, 1).unwrap();
                let e = rational_surgery(&KnotRecord::unknot(), r, 1).unwrap();
                let expect = Q::new(1.into(), 1152.into()) * (Q::new(1.into(), (r * r).into()) - Q::from_integer(1.into()));
                rep.cases += 1;
                if !(c.lambda_w == e.lambda_w && c.lambda2 == e.lambda2 && c.lambda2 == expect) {
                    rep.failed += 1;
                    rep.samples.push(format!("L({r}, 1)"));
                }
            }
            rep
        }],
    )
}

#[test]
fn acceptance() {
    let lines = vec![
        timed(1, "dedekind reciprocity, |p|, |q| <= 200", Some(10), || checks::reciprocity(200)),
        timed(2, "kirby-melvin, exhaustive l <= 6 |c| <= 3 plus 10^4 random", Some(60), || {
            checks::kirby_melvin_sweep(SEED, 6, 3, 10_000)
        }),
        timed(3, "signature recursions vs congruence oracle, 10^4", Some(30), || {
            checks::signatures(SEED, 10_000)
        }),
        timed(4, "inverse corners vs exact inverse, 10^4", None, || checks::corners(SEED, 10_000)),
        timed(5, "SL2(Z) round trip and chain convention, 10^4", None, || sl2_full(10_000)),
        timed(6, "diagram dimensions and the six strutless classes", Some(120), dims),
        timed(7, "wheeling identity for 5 values of alpha", None, || {
            checks::d_omega(&checks::default_alphas())
        }),
        timed(8, "engine lambda_W vs closed form, 200 splices", Some(300), || {
            checks::fujita_consistency(SEED, 200)
        }),
        timed(9, "engine lambda_2 vs closed form, 200 splices", Some(300), || {
            checks::lambda2_consistency(SEED, 200)
        }),
        timed(10, "standard splice additivity and lambda_2 defect", None, || {
            checks::standard_splice(SEED, 100)
        }),
        timed(11, "lens spaces 1 <= r <= 50, closed form and engine", None, lens_full),
        timed(12, "kappa three routes (500) and null-framed kappa", None, || {
            checks::kappa_threeway(SEED, 500)
        }),
        timed(13, "rational surgery independent of auxiliary choice, 100", None, || {
            let mut r = checks::surgery_independence(SEED, 100);
            r.name = "surgery".into();
            r
        }),
    ];

    let mut all = true;
    for l in &lines {
        let status = if l.ok() { "PASS" } else { "FAIL" };
        let budget = l.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        println!(
            "{status} criterion {:>2}: {} [{} cases, {} failed, {:.2?}{budget}]",
            l.id, l.what, l.report.cases, l.report.failed, l.elapsed
        );
        for s in &l.report.samples {
            println!("    {s}");
        }
        all &= l.ok();
    }
    assert!(all, "acceptance failures");
}
