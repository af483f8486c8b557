use cubic_pgl::classify::{classify, counts, representatives};
use cubic_pgl::invariants::{omega, theta};
use cubic_pgl::oracle::{brute_equiv, orbit_partition_fst, verify_suite, VerifyOptions, SUITES};
use cubic_pgl::projline::{enumerate_pgl, Moebius};
use cubic_pgl::ramify::ram_type;
use cubic_pgl::{Error, FieldCtx, FieldElem, Poly, RatFun};
use proptest::prelude::*;

fn field(p: u64, n: usize) -> FieldCtx {
    FieldCtx::new(p, n, None).unwrap()
}

fn cubic(ctx: &FieldCtx, coeffs: &[u32]) -> Option<RatFun> {
    let e = |i: usize| ctx.elem(coeffs[i] % ctx.q());
    let f = RatFun::new(ctx, Poly::new((0..4).map(e).collect()), Poly::new((4..8).map(e).collect())).ok()?;
    (f.degree() == 3).then_some(f)
}

fn moebius(ctx: &FieldCtx, c: &[u32]) -> Option<Moebius> {
    let e = |i: usize| ctx.elem(c[i] % ctx.q());
    Moebius::new(ctx, e(0), e(1), e(2), e(3)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn classify_invariant_at_25_and_27(
        big in any::<bool>(),
        f in prop::collection::vec(0u32..1000, 8),
        m in prop::collection::vec(0u32..1000, 8),
    ) {
        let ctx = if big { field(3, 3) } else { field(5, 2) };
        let (Some(f), Some(psi), Some(phi)) = (cubic(&ctx, &f), moebius(&ctx, &m[..4]), moebius(&ctx, &m[4..])) else {
            return Ok(());
        };
        let g = f.transform(&ctx, &psi, &phi);
        prop_assert_eq!(classify(&ctx, &f).unwrap(), classify(&ctx, &g).unwrap());
        if f.is_separable(&ctx) {
            prop_assert_eq!(ram_type(&ctx, &f).unwrap(), ram_type(&ctx, &g).unwrap());
        }
    }

    #[test]
    fn brute_equiv_symmetric_transitive(
        q in prop::sample::select(vec![(3u64, 1usize), (5, 1), (2, 2), (7, 1)]),
        f in prop::collection::vec(0u32..1000, 8),
        m in prop::collection::vec(0u32..1000, 16),
    ) {
        let ctx = field(q.0, q.1);
        let Some(f) = cubic(&ctx, &f) else { return Ok(()) };
        let ms: Vec<Option<Moebius>> = m.chunks(4).map(|c| moebius(&ctx, c)).collect();
        let [Some(a), Some(b), Some(c), Some(d)] = ms[..] else { return Ok(()) };
        let g = f.transform(&ctx, &a, &b);
        let h = g.transform(&ctx, &c, &d);
        let (psi, phi) = brute_equiv(&ctx, &f, &g).unwrap().expect("g is a transform of f");
        prop_assert_eq!(f.transform(&ctx, &psi, &phi), g.clone());
        prop_assert!(brute_equiv(&ctx, &g, &f).unwrap().is_some());
        prop_assert!(brute_equiv(&ctx, &f, &h).unwrap().is_some());
    }
}

#[test]
fn classify_constant_on_family_orbits() {
    for (p, n) in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)] {
        let ctx = field(p, n);
        let pgl = enumerate_pgl(&ctx);
        for (i, sp) in omega(&ctx).into_iter().enumerate() {
            let f = sp.ratfun(&ctx);
            let want = classify(&ctx, &f).unwrap();
            let psi = &pgl[(7 * i + 3) % pgl.len()];
            let phi = &pgl[(11 * i + 5) % pgl.len()];
            assert_eq!(classify(&ctx, &f.transform(&ctx, psi, phi)).unwrap(), want, "q = {}", ctx.q());
        }
    }
}

#[test]
fn theta_constant_on_orbits_at_25_and_27() {
    for ctx in [field(5, 2), field(3, 3)] {
        let part = orbit_partition_fst(&ctx).unwrap();
        assert_eq!(part.len() as u32, ctx.q() - 1);
        for o in &part.orbits {
            let th = theta(&ctx, o.members[0]);
            assert!(o.members.iter().all(|&sp| theta(&ctx, sp) == th));
        }
    }
}

#[test]
fn representatives_match_counts() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5)] {
        let ctx = field(p, n);
        assert_eq!(representatives(&ctx).unwrap().len() as u64, counts(&ctx).total, "q = {}", ctx.q());
    }
}

#[test]
fn even_census_matches_row_count() {
    for n in 1..=5 {
        let ctx = field(2, n);
        let q = ctx.q() as usize;
        // rows (i)–(iii) one class each, (iv) one per cube class, (v) and (vi) one per c ∉ F_2
        let rows = 3 + ctx.cube_transversal().len() + 2 * (q - 2);
        assert_eq!(representatives(&ctx).unwrap().len(), rows);
    }
}

#[test]
fn representatives_pairwise_inequivalent() {
    for (p, n) in [(2, 2), (5, 1), (7, 1), (3, 2)] {
        let ctx = field(p, n);
        let reps = representatives(&ctx).unwrap();
        for (i, (_, f)) in reps.iter().enumerate() {
            for (_, g) in &reps[i + 1..] {
                assert!(brute_equiv(&ctx, f, g).unwrap().is_none(), "{} ~ {}", f.display(&ctx), g.display(&ctx));
            }
        }
    }
}

#[test]
fn suites_are_deterministic() {
    let ctx = field(11, 1);
    let opts = VerifyOptions { seed: 9, samples: 50 };
    for s in SUITES {
        let a = verify_suite(&ctx, s, opts);
        let b = verify_suite(&ctx, s, opts);
        match (a, b) {
            (Ok(a), Ok(b)) => assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap()),
            (Err(Error::Excluded(_)), Err(Error::Excluded(_))) => {}
            other => panic!("{s}: {other:?}"),
        }
    }
}

#[test]
fn every_odd_suite_passes_at_13() {
    let ctx = field(13, 1);
    for s in SUITES {
        match verify_suite(&ctx, s, VerifyOptions::default()) {
            Ok(r) => assert!(r.passed, "{}", r.text()),
            Err(Error::Excluded(_)) => assert_eq!(s, "evenchar"),
            Err(e) => panic!("{s}: {e}"),
        }
    }
}

#[test]
fn field_elem_is_plain_data() {
    let ctx = field(5, 1);
    let x: FieldElem = ctx.from_int(3);
    let s = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<FieldElem>(&s).unwrap(), x);
}
