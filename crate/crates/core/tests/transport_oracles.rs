//! Oracles for base change: the section-groupoid pushforward against its
//! universal property, the adjunction checks, and the mates.

mod common;

use awfslab_core::cat::{compose_functors, split_pair_name, FinCategory, Functor};
use awfslab_core::error::Error;
use awfslab_core::squares::{enumerate_functors_over, SliceMorphism, Square};
use awfslab_core::structured::{pullback_split_fibration, validate_split_fibration, Orientation, SplitFibration};
use awfslab_core::transport::{
    adjunction_check, is_pullback_square, mate_alpha, mate_alpha_naturality_check, mate_beta_component,
    materialize_slice_category, pullback_arrows, pushforward_fibration, pushforward_object,
};

use common::*;

#[test]
fn pushforward_along_identity_is_object_for_object() {
    let b = bz2();
    let f = SplitFibration::identity(&b, Orientation::Cocartesian);
    // x : twisted double cover total -> BZ2
    let x = twisted_double_cover(Orientation::Cocartesian).functor;
    let pf = pushforward_object(&f, &x).unwrap();
    assert_eq!(pf.total.objects.len(), x.source.objects.len());
    assert_eq!(pf.total.morphisms.len(), x.source.morphisms.len());
    assert!(pf.total.validate().unwrap().ok());
}

#[test]
fn discrete_23_pushforward_has_six_objects() {
    let (f, x) = discrete_23_over_two();
    let pf = pushforward_object(&f, &x).unwrap();
    assert_eq!(pf.total.objects.len(), 6);
    // discrete: only identity families
    assert_eq!(pf.total.morphisms.len(), 6);
    assert!(pf.total.validate().unwrap().ok());
}

#[test]
fn adjunction_oracle_on_discrete_fixture() {
    let (f, x) = discrete_23_over_two();
    let y_cat = FinCategory::discrete(&["p", "q"]);
    let y = Functor::constant(&y_cat, f.base(), "*");
    let (cases, rep) = adjunction_check(&f, &[(y, x)]).unwrap();
    assert!(rep.ok(), "{rep}");
    assert_eq!(cases[0].hom_over_a, 36);
    assert_eq!(cases[0].hom_over_b, 36);
}

#[test]
fn adjunction_oracle_on_twisted_cover() {
    let f = twisted_double_cover(Orientation::Cocartesian);
    let y = Functor::identity(f.base());
    let x = Functor::identity(f.total());
    let (cases, rep) = adjunction_check(&f, &[(y, x)]).unwrap();
    assert!(rep.ok(), "{rep}");
    assert_eq!(cases[0].hom_over_a, cases[0].hom_over_b);
}

#[test]
fn adjunction_oracle_on_identity_fibration() {
    let b = bz2();
    let f = SplitFibration::identity(&b, Orientation::Cocartesian);
    let y = Functor::identity(&b);
    let x = Functor::identity(&b);
    let (cases, rep) = adjunction_check(&f, &[(y, x)]).unwrap();
    assert!(rep.ok(), "{rep}");
    // Hom_B(1, 1) has |End(BZ2) over BZ2| elements on both sides
    assert_eq!(cases[0].hom_over_a, cases[0].hom_over_b);
}

#[test]
fn pushforward_fibration_validates_and_splits() {
    // x as a fibration: product (two x tdc-total) -> tdc-total? keep small:
    // x = product fibration two x BZ2 -> BZ2 over the base of the identity.
    let b = bz2();
    let f = SplitFibration::identity(&b, Orientation::Cocartesian);
    let x = product_fibration(&discrete2(), &b, Orientation::Cocartesian);
    let (pf, fib) = pushforward_fibration(&f, &x).unwrap();
    assert!(pf.total.validate().unwrap().ok());
    let rep = validate_split_fibration(&fib).unwrap();
    assert!(rep.ok(), "{rep}");
    // transports respect the splitting via the section groupoid view
    for b_obj in &pf.projection.target.objects.clone() {
        let sg = pf.section_groupoid(b_obj, Some(&fib));
        for (m, table) in &sg.transports {
            // composite transport equals transport of composite
            for (m2, table2) in &sg.transports {
                let (mm, mm2) = (m.clone(), m2.clone());
                let base = pf.projection.target.clone();
                if base.dom(&mm2) != base.cod(&mm) {
                    continue;
                }
                let comp = base.compose(&mm2, &mm).to_string();
                for (s, mid) in table {
                    let two_step = {
                        let sg_mid = pf.section_groupoid(base.cod(&mm), Some(&fib));
                        sg_mid.transports[&mm2][mid].clone()
                    };
                    let one_step = {
                        let lifted = fib.lift(s, &comp);
                        fib.total().cod(lifted).to_string()
                    };
                    assert_eq!(two_step, one_step, "split transport law");
                    let _ = table2;
                }
            }
        }
    }
}

#[test]
fn pullback_arrows_identity_and_functoriality() {
    let b = bz2();
    let id = Functor::identity(&b);
    // (g, b): w = id on BZ2 over itself
    let m = SliceMorphism::new(Functor::identity(&b), id.clone()).unwrap();
    let pulled = pullback_arrows(&id, &m).unwrap();
    // pullback along the identity: same shape up to pair naming
    assert_eq!(pulled.slice.map.source.objects.len(), 1);
    assert!(pulled.slice.map.validate().unwrap().ok());

    // functoriality spot check: f*(m2.m1) = f*(m2).f*(m1)
    let f = twisted_double_cover(Orientation::Cocartesian).functor;
    let m1 = SliceMorphism::new(Functor::identity(&b), id.clone()).unwrap();
    let m2 = SliceMorphism::new(Functor::identity(&b), id).unwrap();
    let composed = awfslab_core::squares::slice_morphism_compose(&m2, &m1).unwrap();
    let p_comp = pullback_arrows(&f, &composed).unwrap();
    let p1 = pullback_arrows(&f, &m1).unwrap();
    let p2 = pullback_arrows(&f, &m2).unwrap();
    let two_step = compose_functors(&p2.slice.map, &p1.slice.map).unwrap();
    assert_eq!(two_step, p_comp.slice.map);
}

#[test]
fn fiber_restriction_by_point_pullback() {
    // f = point 1 -> B: pullback of (g, b) restricts to the fiber
    let g = twisted_double_cover(Orientation::Cocartesian);
    let pt = one();
    let point = Functor::from_maps(&pt, g.base(), |_| "o".into(), |_| "r0".into());
    let m = SliceMorphism::new(Functor::identity(g.total()), g.functor.clone()).unwrap();
    let pulled = pullback_arrows(&point, &m).unwrap();
    assert_eq!(pulled.slice.map.source.objects.len(), 2); // two sheet points
    assert!(pulled.slice.map.validate().unwrap().ok());
}

fn pullback_square_fixture() -> (Square, SplitFibration, SplitFibration) {
    let g = twisted_double_cover(Orientation::Cocartesian);
    let pt = one();
    let point = Functor::from_maps(&pt, g.base(), |_| "o".into(), |_| "r0".into());
    let (f, proj_total) = pullback_split_fibration(&g, &point).unwrap();
    let sq = Square::new(f.functor.clone(), g.functor.clone(), proj_total, point).unwrap();
    (sq, f, g)
}

#[test]
fn mate_alpha_identity_square_is_identityish() {
    let b = bz2();
    let f = Functor::identity(&b);
    let sq = Square::identity(&f);
    let m = SliceMorphism::new(Functor::identity(&b), Functor::identity(&b)).unwrap();
    let a = mate_alpha(&sq, &m).unwrap();
    assert!(a.square.top.is_bijective());
    assert!(a.square.bottom.is_bijective());
}

#[test]
fn mate_alpha_iso_on_pullback_squares() {
    let (sq, f, _) = pullback_square_fixture();
    assert!(is_pullback_square(&sq).unwrap());
    // the slice morphism lives over the base of the left leg
    let b = f.base().clone();
    let w_cat = discrete2();
    let w_obj = Functor::constant(&w_cat, &b, "*");
    let m = SliceMorphism::new(Functor::identity(&w_cat), w_obj).unwrap();
    let a = mate_alpha(&sq, &m).unwrap();
    assert!(a.square.top.is_bijective(), "alpha component on the domain side must be iso");
    assert!(a.square.bottom.is_bijective(), "alpha component on the codomain side must be iso");
    // naturality against the identity connecting pair
    let rep =
        mate_alpha_naturality_check(&sq, &m, &m, &Functor::identity(&w_cat), &Functor::identity(&w_cat)).unwrap();
    assert!(rep.ok(), "{rep}");
}

/// A commuting but non-pullback square of fibrations: the cover collapsed
/// onto the identity fibration of its base.
fn non_pullback_square() -> (Square, SplitFibration, SplitFibration) {
    let g = twisted_double_cover(Orientation::Cocartesian);
    let idb = SplitFibration::identity(g.base(), Orientation::Cocartesian);
    let sq = Square::new(
        g.functor.clone(),
        idb.functor.clone(),
        g.functor.clone(),
        Functor::identity(g.base()),
    )
    .unwrap();
    (sq, g, idb)
}

#[test]
fn mate_alpha_non_pullback_square_computes() {
    let (sq, g, _) = non_pullback_square();
    assert!(!is_pullback_square(&sq).unwrap());
    let b = g.base().clone();
    let m = SliceMorphism::new(Functor::identity(&b), Functor::identity(&b)).unwrap();
    let a = mate_alpha(&sq, &m).unwrap();
    // the component exists but is not bijective on this square
    assert!(!a.square.bottom.is_bijective());
}

#[test]
fn mate_beta_iso_on_pullback_and_rejects_non_pullback() {
    let (sq, f, g) = pullback_square_fixture();
    let z = Functor::identity(g.total());
    let beta = mate_beta_component(&sq, &f, &g, &z).unwrap();
    assert!(beta.component.is_bijective(), "beta component must be an isomorphism on a pullback square");
    assert!(beta.component.validate().unwrap().ok());
    // over B on both sides
    assert_eq!(compose_functors(&beta.cod, &beta.component).unwrap(), beta.dom);

    let (non_pb, g2, idb) = non_pullback_square();
    let z2 = Functor::identity(idb.total());
    match mate_beta_component(&non_pb, &g2, &idb, &z2) {
        Err(Error::NotAPullback(_)) => {}
        other => panic!("expected NotAPullback, got {other:?}"),
    }
}

#[test]
fn mate_beta_arrow_component_is_an_iso_square() {
    let (sq, f, g) = pullback_square_fixture();
    // slice morphism (identity, identity object) over the total of g
    let m = SliceMorphism::new(Functor::identity(g.total()), Functor::identity(g.total())).unwrap();
    let beta_sq = awfslab_core::transport::mate_beta(&sq, &f, &g, &m).unwrap();
    assert!(beta_sq.top.is_bijective());
    assert!(beta_sq.bottom.is_bijective());
}

#[test]
fn mate_alpha_naturality_nontrivial_connecting_pair() {
    let (sq, f, _) = pullback_square_fixture();
    let b = f.base().clone();
    let w_cat = discrete2();
    let w_obj = Functor::constant(&w_cat, &b, "*");
    let m1 = SliceMorphism::new(Functor::identity(&w_cat), w_obj).unwrap();
    let pt = one();
    let pt_obj = Functor::constant(&pt, &b, "*");
    let m2 = SliceMorphism::new(Functor::identity(&pt), pt_obj).unwrap();
    // connecting pair: collapse the two points to the single one
    let p = Functor::constant(&w_cat, &pt, "*");
    let q = p.clone();
    let rep = mate_alpha_naturality_check(&sq, &m1, &m2, &p, &q).unwrap();
    assert!(rep.ok(), "{rep}");
}

#[test]
fn materialized_slice_category_composes() {
    let b = bz2();
    let y1 = Functor::identity(&b);
    let pt = one();
    let y2 = Functor::from_maps(&pt, &b, |_| "o".into(), |_| "r0".into());
    let (cat, table) = materialize_slice_category(&b, &[("y1".into(), y1), ("y2".into(), y2)]).unwrap();
    assert!(cat.validate().unwrap().ok());
    // hom(y2, y1) over BZ2: functors 1 -> BZ2 over the base: exactly one
    assert_eq!(cat.hom("y2", "y1").len(), 1);
    // hom(y1, y1): endofunctors of BZ2 over BZ2: identity and the trivial map
    // must both be present only if they are over the identity; the identity
    // is always there
    assert!(cat.hom("y1", "y1").iter().any(|m| table[&m.name].is_identity()));
}

#[test]
fn functors_over_respects_renaming() {
    // filler counts are invariant under renaming of the fiber
    let (f, x) = discrete_23_over_two();
    let y_cat = FinCategory::discrete(&["p", "q"]);
    let y = Functor::constant(&y_cat, f.base(), "*");
    let n1 = {
        let pulled = awfslab_core::transport::pullback_object(&f.functor, &y).unwrap();
        enumerate_functors_over(&pulled.over, &x).unwrap().len()
    };
    // rename fiber objects of x
    let renames: std::collections::BTreeMap<String, String> =
        [("x0".to_string(), "z9".to_string())].into_iter().collect();
    let mor_renames: std::collections::BTreeMap<String, String> =
        [("id_x0".to_string(), "id_z9".to_string())].into_iter().collect();
    let x_cat2 = x.source.rename(&renames, &mor_renames);
    let x2 = Functor::from_maps(&x_cat2, &x.target, |o| if o == "z9" { "0".into() } else { x.apply_obj(o).into() }, |m| {
        if m == "id_z9" {
            "id_0".into()
        } else {
            x.apply_mor(m).into()
        }
    });
    let n2 = {
        let pulled = awfslab_core::transport::pullback_object(&f.functor, &y).unwrap();
        enumerate_functors_over(&pulled.over, &x2).unwrap().len()
    };
    assert_eq!(n1, n2);
}

#[test]
fn split_pair_names_round_trip_through_pullbacks() {
    let (sq, f, _) = pullback_square_fixture();
    let _ = sq;
    for o in &f.total().objects {
        let (a, b) = split_pair_name(o).unwrap();
        assert!(!a.is_empty() && !b.is_empty());
    }
}
