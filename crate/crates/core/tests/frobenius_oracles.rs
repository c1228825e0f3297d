//! Oracles for the Frobenius construction: the three proof equations, square
//! and composition preservation, strong Frobenius lifts, the pushforward
//! structure, and the Beck--Chevalley component equality.

mod common;

use awfslab_core::cat::{compose_functors, pair_name, FinCategory, Functor};
use awfslab_core::error::Error;
use awfslab_core::frobenius::{
    beck_chevalley_check, frobenius_preserves_composition, frobenius_preserves_squares, frobenius_transport,
    pushforward_filler_agreement, pushforward_structure, strong_frobenius_checks, strong_frobenius_unit_square,
    ReflectionSquareCase, SlicedFibration, SlicedReflection, TheoremWitnessCase,
};
use awfslab_core::squares::Square;
use awfslab_core::structured::{
    adjoin_retract, fibration_opfibration_convert, pullback_split_fibration, validate_split_fibration,
    validate_split_reflection, Orientation, SplitFibration, SplitReflection,
};

use common::*;

/// The standard opfibration for these tests: two x BZ2 -> BZ2.
fn p_fib() -> SplitFibration {
    product_fibration(&discrete2(), &bz2(), Orientation::Cocartesian)
}

/// Endpoint reflection sliced over BZ2 by the constant extension.
fn sliced_endpoint() -> SlicedReflection {
    let r = endpoint_reflection();
    let ext = Functor::constant(r.cod_cat(), &bz2(), "o");
    SlicedReflection::new(r, ext).unwrap()
}

#[test]
fn identity_reflection_transports_to_identity() {
    let p = p_fib();
    let c = bz2();
    let sr = SlicedReflection::new(SplitReflection::identity(&c), Functor::identity(&c)).unwrap();
    let t = frobenius_transport(&p, &sr).unwrap();
    assert!(t.report.ok(), "{}", t.report);
    assert!(t.output.refl.section.is_identity());
    assert!(t.output.refl.retraction.is_identity());
}

#[test]
fn transport_satisfies_proof_equations_and_validates() {
    let p = p_fib();
    let sr = sliced_endpoint();
    let t = frobenius_transport(&p, &sr).unwrap();
    assert!(t.report.ok(), "{}", t.report);
    assert!(validate_split_reflection(&t.output.refl).unwrap().ok());
    // F(a, R d) = a: the retraction G maps section-image points back
    for o in &t.output.refl.dom_cat().objects.clone() {
        let so = t.output.refl.section.apply_obj(o);
        assert_eq!(t.output.refl.retraction.apply_obj(so), *o);
    }
}

#[test]
fn transported_section_lifts_consistently_with_canonical_lift() {
    // the transported section solves its own lifting problems through
    // the canonical operation: phi . (P*R) = X for the transported square
    let p = p_fib();
    let sr = sliced_endpoint();
    let t = frobenius_transport(&p, &sr).unwrap();
    // a problem for the transported reflection against the cartesian p
    let p_cart = fibration_opfibration_convert(&p).unwrap();
    let ecod = t.output.refl.cod_cat().clone();
    let x = Functor::from_maps(t.output.refl.dom_cat(), p_cart.total(), |o| {
        awfslab_core::cat::split_pair_name(o).unwrap().0.to_string()
    }, |m| {
        awfslab_core::cat::split_pair_name(m).unwrap().0.to_string()
    });
    let y = Functor::from_maps(&ecod, p_cart.base(), |o| {
        let a = awfslab_core::cat::split_pair_name(o).unwrap().0;
        p_cart.functor.apply_obj(a).to_string()
    }, |m| {
        let a = awfslab_core::cat::split_pair_name(m).unwrap().0;
        p_cart.functor.apply_mor(a).to_string()
    });
    let sq = Square::new(t.output.refl.section.clone(), p_cart.functor.clone(), x, y).unwrap();
    let phi = awfslab_core::lifting::canonical_lift(&t.output.refl, &p_cart, &sq).unwrap();
    let oracle = awfslab_core::squares::enumerate_fillers(&sq);
    assert!(oracle.contains(&phi));
}

#[test]
fn identity_square_is_preserved() {
    let p = p_fib();
    let sr = sliced_endpoint();
    let case = ReflectionSquareCase {
        left: sr.clone(),
        right: sr.clone(),
        top: Functor::identity(sr.refl.dom_cat()),
        bottom: Functor::identity(sr.refl.cod_cat()),
    };
    let rep = frobenius_preserves_squares(&p, &case).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn retract_adjoined_square_is_preserved() {
    // a non-identity morphism of sliced reflections: include the endpoint
    // reflection into the retract-adjoined one on the interval
    let p = p_fib();
    let sr = sliced_endpoint();
    let i = sr.refl.cod_cat().clone();
    let bigger = adjoin_retract(&i, "1", "1c").unwrap();
    let ext_big = Functor::from_maps(bigger.cod_cat(), &bz2(), |_| "o".into(), |_| "r0".into());
    let right = SlicedReflection::new(
        awfslab_core::structured::compose_split_reflections(&bigger, &sr.refl).unwrap(),
        ext_big.clone(),
    )
    .unwrap();
    // square from sr to right: top = identity on 1, bottom = the section of bigger
    let case = ReflectionSquareCase {
        left: sr.clone(),
        right,
        top: Functor::identity(sr.refl.dom_cat()),
        bottom: bigger.section.clone(),
    };
    let rep = frobenius_preserves_squares(&p, &case).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn broken_extension_is_rejected() {
    let p = p_fib();
    let sr = sliced_endpoint();
    // an extension that disagrees with U . bottom
    let bad_ext = Functor::from_maps(sr.refl.cod_cat(), &bz2(), |_| "o".into(), |m| {
        if m == "m_0_1" || m == "m_1_0" {
            "r1".into()
        } else {
            "r0".into()
        }
    });
    let bad = SlicedReflection::new(sr.refl.clone(), bad_ext).unwrap();
    let case = ReflectionSquareCase {
        left: bad,
        right: sr.clone(),
        top: Functor::identity(sr.refl.dom_cat()),
        bottom: Functor::identity(sr.refl.cod_cat()),
    };
    match frobenius_preserves_squares(&p, &case) {
        Err(Error::ExtensionMismatch(_)) => {}
        other => panic!("expected ExtensionMismatch, got {other:?}"),
    }
}

#[test]
fn composition_is_preserved() {
    let p = p_fib();
    // lower: endpoint 1 -> I over BZ2; upper: identity over its domain
    let lower = sliced_endpoint();
    let upper = SlicedReflection::new(
        SplitReflection::identity(lower.refl.dom_cat()),
        lower.dom_extension(),
    )
    .unwrap();
    let rep = frobenius_preserves_composition(&p, &upper, &lower).unwrap();
    assert!(rep.ok(), "{rep}");

    // three-stage: adjoin a retract on the interval side
    let i = lower.refl.cod_cat().clone();
    let bigger = adjoin_retract(&i, "1", "1c").unwrap();
    let ext_big = Functor::from_maps(bigger.cod_cat(), &bz2(), |_| "o".into(), |_| "r0".into());
    let upper2 = SlicedReflection::new(lower.refl.clone(), {
        // extension of the upper must be ext_big . section(bigger)
        compose_functors(&ext_big, &bigger.section).unwrap()
    })
    .unwrap();
    let lower2 = SlicedReflection::new(bigger, ext_big).unwrap();
    let rep2 = frobenius_preserves_composition(&p, &upper2, &lower2).unwrap();
    assert!(rep2.ok(), "{rep2}");
}

/// A two-stage tower of sliced reflections over BZ2 whose units both map to
/// the generator, so the composite exercises `lift(r1.r1) = lift(r1).lift(r1)`.
fn twisted_reflection_tower() -> (SlicedReflection, SlicedReflection) {
    let i = interval();
    let r_j = adjoin_retract(&i, "1", "1c").unwrap();
    let b = bz2();
    // parity: 0 and 1c on one sheet, 1 on the other
    let parity = |o: &str| if o == "1" { 0 } else { 1 };
    let u_j = Functor::from_maps(r_j.cod_cat(), &b, |_| "o".into(), |m| {
        let base = m.split('|').next().unwrap();
        let rest = base.strip_prefix("m_").unwrap();
        let (x, y) = rest.split_once('_').unwrap();
        let endpoints: Vec<&str> = m.split('|').collect();
        let (sx, sy) = if endpoints.len() == 3 { (endpoints[1], endpoints[2]) } else { (x, y) };
        if (parity(sx) + parity(sy)) % 2 == 1 {
            "r1".into()
        } else {
            "r0".into()
        }
    });
    assert!(u_j.validate().unwrap().ok(), "twisted extension must be a functor");
    let lower = SlicedReflection::new(r_j, u_j).unwrap();
    let upper = SlicedReflection::new(endpoint_reflection(), lower.dom_extension()).unwrap();
    (upper, lower)
}

#[test]
fn splitting_mutation_breaks_composition_check() {
    // base BZ2, fiber Z/4: rebinding the lift of the generator by a fiber
    // rotation breaks the splitting in a way only the composite sees
    let fiber = FinCategory::cyclic_group("f", 4);
    let mut p = product_fibration(&fiber, &bz2(), Orientation::Cocartesian);
    assert!(validate_split_fibration(&p).unwrap().ok());
    let key = (pair_name("f", "o"), "r1".to_string());
    p.cleavage.insert(key, pair_name("r1", "r1"));
    assert!(!validate_split_fibration(&p).unwrap().ok(), "mutation must break the splitting");
    let (upper, lower) = twisted_reflection_tower();
    let failed = match frobenius_preserves_composition(&p, &upper, &lower) {
        Ok(rep) => !rep.ok(),
        Err(_) => true,
    };
    assert!(failed, "a broken splitting must be detected");
    // and the untouched fibration passes the same tower
    let p_good = product_fibration(&fiber, &bz2(), Orientation::Cocartesian);
    let rep = frobenius_preserves_composition(&p_good, &upper, &lower).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn strong_frobenius_holds_on_corpus() {
    let p = p_fib();
    let id_refl = SlicedReflection::new(SplitReflection::identity(&bz2()), Functor::identity(&bz2())).unwrap();
    let rep = strong_frobenius_checks(&p, &[id_refl, sliced_endpoint()]).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn strong_frobenius_unit_needs_aligned_extensions() {
    // Over the trivial fibration contractible{a,b} -> 1, the extension that
    // spreads the interval across the two objects is not cleavage-aligned:
    // U R L 1 = a while (P U theta_1)_!(U 1) = b. Transported reflections
    // are aligned by construction.
    let total = FinCategory::contractible(&["a", "b"]);
    let pt = one();
    let mut cleavage = std::collections::BTreeMap::new();
    for o in &total.objects {
        cleavage.insert((o.clone(), "id_*".to_string()), total.identity(o).to_string());
    }
    let p = SplitFibration {
        functor: Functor::constant(&total, &pt, "*"),
        orientation: Orientation::Cocartesian,
        cleavage,
    };
    assert!(validate_split_fibration(&p).unwrap().ok());
    let r = endpoint_reflection();
    let u = Functor::from_maps(r.cod_cat(), p.total(), |o| if o == "0" { "a".into() } else { "b".into() }, |m| {
        let rest = m.strip_prefix("m_").unwrap();
        let (x, y) = rest.split_once('_').unwrap();
        let side = |s: &str| if s == "0" { "a" } else { "b" };
        format!("m_{}_{}", side(x), side(y))
    });
    assert!(u.validate().unwrap().ok());
    let over_a = SlicedReflection::new(r.clone(), u).unwrap();
    let rep = strong_frobenius_unit_square(&p, &over_a).unwrap();
    assert!(!rep.ok(), "a sheet-spreading extension is not cleavage-aligned");
    // while the checks over the base (which test transported reflections)
    // pass, including on the twisted cover
    let tdc = twisted_double_cover(Orientation::Cocartesian);
    let base_refl = SlicedReflection::new(SplitReflection::identity(&bz2()), Functor::identity(&bz2())).unwrap();
    let over_b = SlicedReflection::new(r.clone(), Functor::constant(r.cod_cat(), &bz2(), "o")).unwrap();
    let rep2 = strong_frobenius_checks(&tdc, &[base_refl, over_b]).unwrap();
    assert!(rep2.ok(), "{rep2}");
}

fn theorem_fixture() -> (SplitFibration, SlicedFibration) {
    // P : two -> 1; q : X -> two with fibers {x0, x1} and {y0}
    let (p, x) = discrete_23_over_two();
    let _ = x;
    let a = p.total().clone();
    let x_cat = FinCategory::discrete(&["x0", "x1", "y0"]);
    let q_fun = Functor::from_maps(&x_cat, &a, |o| if o.starts_with('x') { "0".into() } else { "1".into() }, |m| {
        let o = m.strip_prefix("id_").unwrap();
        if o.starts_with('x') {
            "id_0".into()
        } else {
            "id_1".into()
        }
    });
    let mut cleavage = std::collections::BTreeMap::new();
    for o in &x_cat.objects {
        cleavage.insert((o.clone(), q_fun.apply_mor(&format!("id_{o}")).to_string()), format!("id_{o}"));
    }
    let q = SplitFibration { functor: q_fun, orientation: Orientation::Cocartesian, cleavage };
    let sf = SlicedFibration::new(q, Functor::identity(&a)).unwrap();
    (p, sf)
}

#[test]
fn pushforward_structure_validates() {
    let (p, sf) = theorem_fixture();
    let out = pushforward_structure(&p, &sf).unwrap();
    assert_eq!(out.pf_dom.total.objects.len(), 2); // 2 x 1 sections
    assert_eq!(out.pf_cod.total.objects.len(), 1);
    let rep = validate_split_fibration(&out.output.fib).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn pushforward_along_identity_keeps_fibration() {
    let (_, sf) = theorem_fixture();
    let a = sf.extension.source.clone();
    let idp = SplitFibration::identity(&a, Orientation::Cocartesian);
    let out = pushforward_structure(&idp, &sf).unwrap();
    // object-for-object: one section per total object
    assert_eq!(out.pf_dom.total.objects.len(), sf.fib.total().objects.len());
    assert_eq!(out.pf_cod.total.objects.len(), sf.fib.base().objects.len());
    assert!(validate_split_fibration(&out.output.fib).unwrap().ok());
}

#[test]
fn theorem_witness_filler_agreement() {
    let (p, sf) = theorem_fixture();
    let out = pushforward_structure(&p, &sf).unwrap();
    // problems over 1: left = endpoint reflection sliced over 1
    let r = endpoint_reflection();
    let w = Functor::constant(r.cod_cat(), p.base(), "*");
    let left = SlicedReflection::new(r, w).unwrap();
    // tops: sections of pf_dom over the single base point; bottoms forced
    let mut cases = Vec::new();
    for sec in &out.pf_dom.total.objects.clone() {
        let top = Functor::constant(left.refl.dom_cat(), &out.pf_dom.total, sec);
        let bot_obj = out.output.fib.functor.apply_obj(sec).to_string();
        let bottom = Functor::constant(left.refl.cod_cat(), &out.pf_cod.total, &bot_obj);
        cases.push(TheoremWitnessCase { left: left.clone(), top, bottom });
    }
    assert_eq!(cases.len(), 2);
    let rep = pushforward_filler_agreement(&p, &sf, &out, &cases).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn bc_component_equality_on_pullback_of_covers() {
    // Q = twisted double cover over BZ2; pull back along the point to get P
    let q = twisted_double_cover(Orientation::Cocartesian);
    let pt = one();
    let point = Functor::from_maps(&pt, q.base(), |_| "o".into(), |_| "r0".into());
    let (p, proj_total) = pullback_split_fibration(&q, &point).unwrap();
    let square = Square::new(p.functor.clone(), q.functor.clone(), proj_total, point).unwrap();
    // corpus over the base of p (the terminal groupoid)
    let id_refl = SlicedReflection::new(SplitReflection::identity(&pt), Functor::identity(&pt)).unwrap();
    let r = endpoint_reflection();
    let sliced = SlicedReflection::new(r.clone(), Functor::constant(r.cod_cat(), &pt, "*")).unwrap();
    let rep = beck_chevalley_check(&square, &p, &q, &[id_refl, sliced]).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn bc_rejects_cleavage_incompatible_squares() {
    // the identity square on the cover is a pullback; permuting the right
    // copy's cleavage makes it commute without commuting with the splitting
    let q = twisted_double_cover(Orientation::Cocartesian);
    let square = Square::identity(&q.functor);
    let mut q_bad = q.clone();
    q_bad.cleavage.insert(("a".into(), "r1".into()), "m_a_a".into());
    match beck_chevalley_check(&square, &q, &q_bad, &[]) {
        Err(Error::CleavageIncompatible(_)) => {}
        other => panic!("expected CleavageIncompatible, got {other:?}"),
    }
}

#[test]
fn bc_rejects_non_pullbacks() {
    let q = twisted_double_cover(Orientation::Cocartesian);
    let idb = SplitFibration::identity(q.base(), Orientation::Cocartesian);
    let square = Square::new(q.functor.clone(), idb.functor.clone(), q.functor.clone(), Functor::identity(q.base()))
        .unwrap();
    match beck_chevalley_check(&square, &q, &idb, &[]) {
        Err(Error::NotAPullback(_)) => {}
        other => panic!("expected NotAPullback, got {other:?}"),
    }
}
