//! The double-category laws on structured maps: strict associativity and
//! unitality of vertical composition, vertical composition of structured
//! squares, and the arrow-level pushforward's functoriality.

mod common;

use awfslab_core::cat::{compose_functors, Functor};
use awfslab_core::squares::{compose_squares_v, SliceMorphism, Square};
use awfslab_core::structured::{
    adjoin_retract, check_structured_square, compose_split_fibrations, compose_split_reflections,
    pullback_split_fibration, validate_split_fibration, Orientation, SplitFibration, StructuredSquare,
};
use awfslab_core::transport::{induced_pushforward_map, pushforward_arrows, pushforward_object};

use common::*;

/// A two-stage fibration tower with pullback squares on both levels.
fn stacked_pullback_squares() -> (StructuredSquare, StructuredSquare) {
    // Q1 : interval x BZ2 -> BZ2, Q2 : BZ2 -> 1 (identity-cleavage collapse)
    let q1 = product_fibration(&interval(), &bz2(), Orientation::Cartesian);
    let pt = one();
    let mut cleavage = std::collections::BTreeMap::new();
    for o in &q1.base().objects {
        cleavage.insert((o.clone(), "id_*".to_string()), q1.base().identity(o).to_string());
    }
    let q2 = SplitFibration {
        functor: Functor::constant(q1.base(), &pt, "*"),
        orientation: Orientation::Cartesian,
        cleavage,
    };
    // pull back the lower stage along a point, then the upper stage along
    // the resulting projection
    let v = Functor::from_maps(&pt, &pt, |_| "*".into(), |_| "id_*".into());
    let (p2, proj2) = pullback_split_fibration(&q2, &v).unwrap();
    let (p1, proj1) = pullback_split_fibration(&q1, &proj2).unwrap();
    let s1 = Square::new(p1.functor.clone(), q1.functor.clone(), proj1, proj2.clone()).unwrap();
    let s2 = Square::new(p2.functor.clone(), q2.functor.clone(), proj2, v).unwrap();
    (
        StructuredSquare::Fibration { square: s1, left: p1, right: q1 },
        StructuredSquare::Fibration { square: s2, left: p2, right: q2 },
    )
}

#[test]
fn vertical_composition_of_fibration_squares_is_structured() {
    let (top, bottom) = stacked_pullback_squares();
    let (s1, p1, q1) = match &top {
        StructuredSquare::Fibration { square, left, right } => (square, left, right),
        _ => unreachable!(),
    };
    let (s2, p2, q2) = match &bottom {
        StructuredSquare::Fibration { square, left, right } => (square, left, right),
        _ => unreachable!(),
    };
    assert!(check_structured_square(&top).unwrap().ok());
    assert!(check_structured_square(&bottom).unwrap().ok());
    let left = compose_split_fibrations(p1, p2).unwrap();
    let right = compose_split_fibrations(q1, q2).unwrap();
    let square = compose_squares_v(s2, s1).unwrap();
    let composed = StructuredSquare::Fibration { square, left, right };
    let rep = check_structured_square(&composed).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn fibration_composition_is_strictly_associative_and_unital() {
    // three stages: (interval x BZ2) -> BZ2 -> 1 -> 1
    let p = product_fibration(&interval(), &bz2(), Orientation::Cartesian);
    let pt = one();
    let mut cl = std::collections::BTreeMap::new();
    for o in &p.base().objects {
        cl.insert((o.clone(), "id_*".to_string()), p.base().identity(o).to_string());
    }
    let q = SplitFibration {
        functor: Functor::constant(p.base(), &pt, "*"),
        orientation: Orientation::Cartesian,
        cleavage: cl,
    };
    let r = SplitFibration::identity(&pt, Orientation::Cartesian);
    let left = compose_split_fibrations(&compose_split_fibrations(&p, &q).unwrap(), &r).unwrap();
    let right = compose_split_fibrations(&p, &compose_split_fibrations(&q, &r).unwrap()).unwrap();
    assert_eq!(left, right, "strict associativity at the table level");
    assert!(validate_split_fibration(&left).unwrap().ok());
}

#[test]
fn reflection_composition_is_strictly_associative() {
    let r1 = endpoint_reflection();
    let i = r1.cod_cat().clone();
    let r2 = adjoin_retract(&i, "1", "x").unwrap();
    let j = r2.cod_cat().clone();
    let r3 = adjoin_retract(&j, "x", "y").unwrap();
    let left = compose_split_reflections(&r3, &compose_split_reflections(&r2, &r1).unwrap()).unwrap();
    let right = compose_split_reflections(&compose_split_reflections(&r3, &r2).unwrap(), &r1).unwrap();
    assert_eq!(left, right, "strict associativity at the table level");
}

#[test]
fn pushforward_arrows_identity_and_functoriality() {
    let (f, x) = discrete_23_over_two();
    // identity slice morphism pushes to the identity
    let id_slice = SliceMorphism::identity_on(&x);
    let (pushed, pf_dom, pf_cod) = pushforward_arrows(&f, &id_slice).unwrap();
    assert!(pushed.map.is_identity() || pushed.map.is_bijective());
    assert_eq!(pf_dom.total, pf_cod.total);
    assert_eq!(pushed.map, Functor::identity(&pf_dom.total));

    // functoriality: f_*(m2.m1) = f_*(m2).f_*(m1) on a 2-to-1 postcomposition
    let a = x.target.clone();
    let x2_cat = awfslab_core::cat::FinCategory::discrete(&["u0", "u1"]);
    let x2 = Functor::from_maps(&x2_cat, &a, |o| if o == "u0" { "0".into() } else { "1".into() }, |m| {
        if m == "id_u0" {
            "id_0".into()
        } else {
            "id_1".into()
        }
    });
    // m1 : x -> x2 over A (collapse the 2/3 fibers onto single points)
    let collapse = Functor::from_maps(&x.source, &x2_cat, |o| if o.starts_with('x') { "u0".into() } else { "u1".into() }, |m| {
        let o = m.strip_prefix("id_").unwrap();
        if o.starts_with('x') {
            "id_u0".into()
        } else {
            "id_u1".into()
        }
    });
    let m1 = SliceMorphism::new(collapse, x2.clone()).unwrap();
    let m2 = SliceMorphism::identity_on(&x2);
    let composed = awfslab_core::squares::slice_morphism_compose(&m2, &m1).unwrap();
    let (pushed_comp, pf_a, pf_c) = pushforward_arrows(&f, &composed).unwrap();
    let (pushed_1, pf_a1, pf_b1) = pushforward_arrows(&f, &m1).unwrap();
    let (pushed_2, _, _) = pushforward_arrows(&f, &m2).unwrap();
    assert_eq!(pf_a.total, pf_a1.total);
    let two_step = compose_functors(&pushed_2.map, &pushed_1.map).unwrap();
    assert_eq!(two_step, pushed_comp.map);
    let _ = (pf_b1, pf_c);

    // the induced map agrees with direct postcomposition
    let direct = induced_pushforward_map(
        &pushforward_object(&f, &x).unwrap(),
        &pushforward_object(&f, &x2).unwrap(),
        &m1.map,
    )
    .unwrap();
    assert_eq!(direct, pushed_1.map);
}
