#![allow(dead_code)]

//! Shared fixtures for the integration suites.

use std::collections::BTreeMap;

use awfslab_core::cat::{pair_name, pullback_category, FinCategory, Functor, NatTransformation};
use awfslab_core::structured::{Orientation, SplitFibration, SplitReflection};

pub fn one() -> FinCategory {
    FinCategory::terminal("*")
}

pub fn bz2() -> FinCategory {
    FinCategory::cyclic_group("o", 2)
}

pub fn interval() -> FinCategory {
    FinCategory::contractible(&["0", "1"])
}

pub fn discrete2() -> FinCategory {
    FinCategory::discrete(&["0", "1"])
}

/// Product projection `fiber x base -> base` with the product cleavage.
pub fn product_fibration(fiber: &FinCategory, base: &FinCategory, orientation: Orientation) -> SplitFibration {
    let pt = one();
    let ff = Functor::constant(fiber, &pt, "*");
    let fb = Functor::constant(base, &pt, "*");
    let (total, _, p2) = pullback_category(&ff, &fb).unwrap();
    let mut cleavage = BTreeMap::new();
    for o in &total.objects {
        let (x, _) = awfslab_core::cat::split_pair_name(o).unwrap();
        let idx = fiber.identity(x).to_string();
        for m in &base.morphisms {
            let anchored = match orientation {
                Orientation::Cartesian => *base.cod(&m.name) == *awfslab_core::cat::split_pair_name(o).unwrap().1,
                Orientation::Cocartesian => *base.dom(&m.name) == *awfslab_core::cat::split_pair_name(o).unwrap().1,
            };
            if anchored {
                cleavage.insert((o.clone(), m.name.clone()), pair_name(&idx, &m.name));
            }
        }
    }
    SplitFibration { functor: p2, orientation, cleavage }
}

/// The twisted double cover: the contractible groupoid on `{a, b}` over
/// `BZ2`, with the generator swapping the sheets.
pub fn twisted_double_cover(orientation: Orientation) -> SplitFibration {
    let total = FinCategory::contractible(&["a", "b"]);
    let base = bz2();
    let functor = Functor::from_maps(&total, &base, |_| "o".into(), |m| {
        // m_x_y goes over r0 iff x == y
        let rest = m.strip_prefix("m_").unwrap();
        let (x, y) = rest.split_once('_').unwrap();
        if x == y {
            "r0".into()
        } else {
            "r1".into()
        }
    });
    let mut cleavage = BTreeMap::new();
    let other = |e: &str| if e == "a" { "b" } else { "a" };
    for e in ["a", "b"] {
        cleavage.insert((e.to_string(), "r0".to_string()), format!("m_{e}_{e}"));
        match orientation {
            Orientation::Cartesian => {
                cleavage.insert((e.to_string(), "r1".to_string()), format!("m_{}_{e}", other(e)));
            }
            Orientation::Cocartesian => {
                cleavage.insert((e.to_string(), "r1".to_string()), format!("m_{e}_{}", other(e)));
            }
        }
    }
    SplitFibration { functor, orientation, cleavage }
}

/// A functor with all categories discrete: the 2/3-fiber fixture over the
/// two-point base.
pub fn discrete_23_over_two() -> (SplitFibration, Functor) {
    let a = discrete2();
    let pt = one();
    let mut cleavage = BTreeMap::new();
    for o in &a.objects {
        cleavage.insert((o.clone(), "id_*".to_string()), a.identity(o).to_string());
    }
    let f = SplitFibration {
        functor: Functor::constant(&a, &pt, "*"),
        orientation: Orientation::Cocartesian,
        cleavage,
    };
    let x_cat = FinCategory::discrete(&["x0", "x1", "y0", "y1", "y2"]);
    let x = Functor::from_maps(&x_cat, &a, |o| if o.starts_with('x') { "0".into() } else { "1".into() }, |m| {
        let o = m.strip_prefix("id_").unwrap();
        if o.starts_with('x') {
            "id_0".into()
        } else {
            "id_1".into()
        }
    });
    (f, x)
}

/// The endpoint reflection `1 -> I` with the collapsing retraction.
pub fn endpoint_reflection() -> SplitReflection {
    let pt = one();
    let i = interval();
    let section = Functor::from_maps(&pt, &i, |_| "0".into(), |_| "m_0_0".into());
    let retraction = Functor::constant(&i, &pt, "*");
    let unit = NatTransformation::new(
        Functor::identity(&i),
        awfslab_core::cat::compose_functors(&section, &retraction).unwrap(),
        [("0".to_string(), "m_0_0".to_string()), ("1".to_string(), "m_1_0".to_string())].into_iter().collect(),
    );
    SplitReflection { section, retraction, unit }
}
