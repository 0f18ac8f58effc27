use lmo_splice::diagrams::DiagramElement;
use lmo_splice::rational::{frac, q};
use lmo_splice::sl2z::GeneratorSequence;
use lmo_splice::splice::*;
use lmo_splice::{Error, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gluings(bound: i64) -> Vec<GluingMatrix> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    if p * s - q * r == 1 {
                        out.push(GluingMatrix::from_i64(p, q, r, s).unwrap());
                    }
                }
            }
        }
    }
    out
}

fn small_q(rng: &mut ChaCha8Rng) -> Q {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn record(rng: &mut ChaCha8Rng) -> KnotRecord {
    KnotRecord {
        ambient_lambda_w: small_q(rng),
        ambient_lambda2: small_q(rng),
        a2: small_q(rng),
        a4: small_q(rng),
        v_coeff: small_q(rng),
        framing: FramingFraction::null(),
    }
}

fn framing(rng: &mut ChaCha8Rng) -> FramingFraction {
    loop {
        let u: i64 = rng.gen_range(-6..=6);
        let v: i64 = rng.gen_range(1..=5);
        if let Ok(f) = FramingFraction::from_i64(u, v) {
            return f;
        }
    }
}

#[test]
fn engine_reproduces_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all: Vec<_> = gluings(7).into_iter().filter(|g| g.r != 0.into()).collect();
    for _ in 0..60 {
        let g = &all[rng.gen_range(0..all.len())];
        let (k1, k2) = (record(&mut rng), record(&mut rng));
        let res = splice_lmo_truncated(g, &k1, &k2, 5).unwrap();
        assert_eq!(res.lambda_w, casson_walker(g, &k1, &k2).unwrap(), "{g}");
        assert_eq!(res.lambda2, lambda2_splice(g, &k1, &k2).unwrap(), "{g}");
    }
}

#[test]
fn kappa_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let all = gluings(6);
    let mut done = 0;
    while done < 300 {
        let g = &all[rng.gen_range(0..all.len())];
        let (f1, f2) = (framing(&mut rng), framing(&mut rng));
        if !is_qhs(g, &f1, &f2).0 {
            assert_eq!(kappa(g, &f1, &f2), Err(Error::NotQhs));
            continue;
        }
        let k = kappa_routes(g, &f1, &f2).unwrap();
        assert_eq!(k.branch, k.tridiagonal, "{g} {f1} {f2}");
        assert_eq!(k.alternate, k.tridiagonal, "{g} {f1} {f2}");
        done += 1;
    }
}

#[test]
fn null_kappa_matches_main_exponent() {
    let null = FramingFraction::null();
    for g in gluings(6) {
        if g.r == 0.into() {
            continue;
        }
        let p = Q::from_integer(g.p.clone());
        let r = Q::from_integer(g.r.clone());
        let s = Q::from_integer(g.s.clone());
        let expect = -lmo_splice::dedekind::symbol(g.p.clone(), g.r.clone()).unwrap() + (p + s) / r;
        assert_eq!(kappa(&g, &null, &null).unwrap(), expect, "{g}");
    }
}

#[test]
fn kappa_is_independent_of_chain_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let all = gluings(5);
    for _ in 0..100 {
        let g = &all[rng.gen_range(0..all.len())];
        let (f1, f2) = (framing(&mut rng), framing(&mut rng));
        if !is_qhs(g, &f1, &f2).0 {
            continue;
        }
        let (chain, _) = hopf_chain(g).unwrap();
        // G(1)^3 G(0)^2 = I, so this is another factorization of odd extra length
        let mut longer: Vec<_> = chain.as_slice().to_vec();
        longer.extend([1, 1, 1, 0, 0].map(Into::into));
        let longer = GeneratorSequence::new(longer).unwrap();
        assert_eq!(
            lmo_splice::sl2z::splice_recompose(&longer),
            g.as_mat2()
        );
        assert_eq!(
            kappa_from_chain(&chain, &f1, &f2).unwrap(),
            kappa_from_chain(&longer, &f1, &f2).unwrap()
        );
    }
}

#[test]
fn general_formula_with_null_framings_matches_truncated() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let all: Vec<_> = gluings(5).into_iter().filter(|g| g.r != 0.into()).collect();
    let b = single_color_space(5).unwrap();
    let k = b.color("k").unwrap();
    let null = FramingFraction::null();
    for _ in 0..20 {
        let g = &all[rng.gen_range(0..all.len())];
        let (k1, k2) = (record(&mut rng), record(&mut rng));
        let z1 = wheeled_invariant(&k1, &b, k).unwrap();
        let z2 = wheeled_invariant(&k2, &b, k).unwrap();
        let general = splice_lmo_general(g, &null, &null, &z1, &z2).unwrap();
        let truncated = splice_lmo_truncated(g, &k1, &k2, 5).unwrap();
        assert_eq!(Some(general), truncated.raw);
    }
}

#[test]
fn swapping_the_knots() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let all = gluings(5);
    let b = single_color_space(5).unwrap();
    let k = b.color("k").unwrap();
    let mut done = 0;
    while done < 30 {
        let g = &all[rng.gen_range(0..all.len())];
        let (f1, f2) = (framing(&mut rng), framing(&mut rng));
        if !is_qhs(g, &f1, &f2).0 {
            continue;
        }
        let (k1, k2) = (record(&mut rng), record(&mut rng));
        let z1 = unwheel_frame(&wheeled_invariant(&k1, &b, k).unwrap(), &f1.value()).unwrap().element;
        let z2 = unwheel_frame(&wheeled_invariant(&k2, &b, k).unwrap(), &f2.value()).unwrap().element;
        let a = splice_lmo_general(g, &f1, &f2, &z1, &z2).unwrap();
        let c = splice_lmo_general(&g.swapped(), &f2, &f1, &z2, &z1).unwrap();
        assert_eq!(a, c);
        assert_eq!(extract_invariants(&a).unwrap(), extract_invariants(&c).unwrap());
        done += 1;
    }
}

#[test]
fn surgery_and_lens() {
    for r in 1..=12i64 {
        for s in -12..=12i64 {
            if s == 0 || num_integer::gcd(r, s) != 1 {
                continue;
            }
            let closed = lens(r, s).unwrap();
            let engine = rational_surgery(&KnotRecord::unknot(), r, s).unwrap();
            assert_eq!(closed.lambda_w, engine.lambda_w, "L({r},{s})");
            assert_eq!(closed.lambda2, engine.lambda2, "L({r},{s})");
            let shifted = lens(r, s + r).unwrap();
            assert_eq!(shifted.lambda_w, closed.lambda_w);
        }
    }
    let mut trefoil = KnotRecord::unknot();
    trefoil.a2 = q(1);
    assert_eq!(rational_surgery(&trefoil, 1, 1).unwrap().lambda_w, q(2));
}

#[test]
fn standard_splice_of_unknots() {
    let u = KnotRecord::unknot();
    let res = splice_lmo_truncated(&GluingMatrix::standard(), &u, &u, 5).unwrap();
    let b = single_color_space(5).unwrap();
    assert_eq!(res.raw, Some(DiagramElement::one(&b)));
    assert_eq!(splice_lmo_truncated(&GluingMatrix::from_i64(1, 1, 0, 1).unwrap(), &u, &u, 5), Err(Error::NotQhs));
}
