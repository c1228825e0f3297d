//! Seeded fixture generators. Everything is deterministic per seed:
//! groupoids are disjoint unions of one-object cyclic groups (order <= 4)
//! and intervals with relabeled objects, split fibrations come from the
//! Grothendieck construction with cleavage-preserving twists, and split
//! reflections freely adjoin retracts.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use awfslab_core::cat::{compose_functors, pair_name, FinCategory, Functor, Morphism};
use awfslab_core::squares::enumerate_all_functors;
use awfslab_core::structured::{adjoin_retract, compose_split_reflections, Orientation, SplitFibration, SplitReflection};

use crate::CliError;

pub const MAX_OBJECTS: usize = 8;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Union of name-disjoint categories.
fn disjoint_union(parts: &[FinCategory]) -> FinCategory {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    let mut composition = BTreeMap::new();
    let mut inverses = BTreeMap::new();
    for p in parts {
        objects.extend(p.objects.iter().cloned());
        morphisms.extend(p.morphisms.iter().cloned());
        identities.extend(p.identities.clone());
        composition.extend(p.composition.clone());
        if let Some(inv) = &p.inverses {
            inverses.extend(inv.clone());
        }
    }
    FinCategory::new(objects, morphisms, identities, composition, Some(inverses))
}

/// A groupoid of at most `max_objects` objects: components are one-object
/// cyclic groups or contractible intervals, with shuffled object labels.
pub fn gen_groupoid(rng: &mut ChaCha8Rng, max_objects: usize) -> Result<FinCategory, CliError> {
    if max_objects == 0 || max_objects > MAX_OBJECTS {
        return Err(CliError::SizeOutOfRange(format!("max_objects must be in 1..={MAX_OBJECTS}")));
    }
    let mut labels: Vec<String> = (0..MAX_OBJECTS).map(|i| format!("a{i}")).collect();
    labels.shuffle(rng);
    let mut budget = rng.gen_range(1..=max_objects);
    let mut parts = Vec::new();
    let mut next = 0usize;
    while budget > 0 {
        if budget >= 2 && rng.gen_bool(0.5) {
            let size = rng.gen_range(2..=budget.min(3));
            let objs: Vec<&str> = labels[next..next + size].iter().map(|s| s.as_str()).collect();
            parts.push(FinCategory::contractible(&objs));
            next += size;
            budget -= size;
        } else {
            let k = rng.gen_range(1..=4);
            let obj = labels[next].clone();
            let cyc = FinCategory::cyclic_group(&obj, k);
            // prefix the rotation names so components stay disjoint
            let mor_renames: BTreeMap<String, String> =
                (0..k).map(|j| (format!("r{j}"), format!("{obj}_r{j}"))).collect();
            parts.push(cyc.rename(&BTreeMap::new(), &mor_renames));
            next += 1;
            budget -= 1;
        }
    }
    let g = disjoint_union(&parts);
    debug_assert!(g.validate().expect("generated tables total").ok());
    Ok(g)
}

/// All automorphisms of a groupoid, in deterministic order.
fn automorphisms(f: &FinCategory) -> Vec<Functor> {
    enumerate_all_functors(f, f).into_iter().filter(|h| h.is_bijective()).collect()
}

fn functor_power(f: &Functor, k: usize) -> Functor {
    let mut acc = Functor::identity(&f.source);
    for _ in 0..k {
        acc = compose_functors(f, &acc).expect("endofunctor composes");
    }
    acc
}

/// Connected components of a groupoid, as lists of object names.
fn components(g: &FinCategory) -> Vec<Vec<String>> {
    let mut comp: BTreeMap<String, usize> = BTreeMap::new();
    let mut n = 0;
    for o in &g.objects {
        if comp.contains_key(o) {
            continue;
        }
        // breadth-first through hom-connectivity
        let mut stack = vec![o.clone()];
        while let Some(x) = stack.pop() {
            if comp.insert(x.clone(), n).is_some() {
                continue;
            }
            for m in &g.morphisms {
                if m.dom == x && !comp.contains_key(&m.cod) {
                    stack.push(m.cod.clone());
                }
                if m.cod == x && !comp.contains_key(&m.dom) {
                    stack.push(m.dom.clone());
                }
            }
        }
        n += 1;
    }
    let mut out = vec![Vec::new(); n];
    for o in &g.objects {
        out[comp[o]].push(o.clone());
    }
    out
}

/// A split fibration over the given base by the Grothendieck construction:
/// per component a fiber groupoid with a cleavage-preserving twist
/// (a per-object automorphism for intervals, an automorphism of compatible
/// order for cyclic components).
pub fn gen_fibration_over(
    rng: &mut ChaCha8Rng,
    base: &FinCategory,
    max_fiber_objects: usize,
    orientation: Orientation,
) -> Result<SplitFibration, CliError> {
    let comps = components(base);
    // per base object: the fiber and the marker automorphism
    let mut fiber_of: BTreeMap<String, FinCategory> = BTreeMap::new();
    let mut marker: BTreeMap<String, Functor> = BTreeMap::new();
    let mut cyc_gen: BTreeMap<String, Functor> = BTreeMap::new();
    for (ci, comp) in comps.iter().enumerate() {
        let mut fiber = gen_groupoid(rng, max_fiber_objects)?;
        // make fiber names unique per component
        let obj_renames: BTreeMap<String, String> =
            fiber.objects.iter().map(|o| (o.clone(), format!("{o}c{ci}"))).collect();
        let mor_renames: BTreeMap<String, String> =
            fiber.morphisms.iter().map(|m| (m.name.clone(), format!("{}c{ci}", m.name))).collect();
        fiber = fiber.rename(&obj_renames, &mor_renames);
        let autos = automorphisms(&fiber);
        for o in comp {
            fiber_of.insert(o.clone(), fiber.clone());
            marker.insert(o.clone(), autos[rng.gen_range(0..autos.len())].clone());
        }
        if comp.len() == 1 {
            // possibly a cyclic component: order of its endomorphism group
            let o = &comp[0];
            let k = base.morphisms_from(o).len();
            let candidates: Vec<&Functor> =
                autos.iter().filter(|a| functor_power(a, k).is_identity()).collect();
            cyc_gen.insert(o.clone(), (*candidates[rng.gen_range(0..candidates.len())]).clone());
        }
    }
    // transport along each base morphism
    let mut transports: BTreeMap<String, Functor> = BTreeMap::new();
    for m in &base.morphisms {
        let t = if m.dom == m.cod && base.morphisms_from(&m.dom).len() > 1 && components(base).iter().any(|c| c.len() == 1 && c[0] == m.dom) {
            // cyclic component: rotation power by the index of the morphism
            let gen = &cyc_gen[&m.dom];
            // the generator name is "<obj>_r<j>"
            let j: usize = m
                .name
                .rsplit('r')
                .next()
                .and_then(|s| s.parse().ok())
                .unwrap_or(0);
            functor_power(gen, j)
        } else if m.dom == m.cod && base.is_identity(&m.name) {
            Functor::identity(&fiber_of[&m.dom])
        } else if components(base).iter().any(|c| c.contains(&m.dom) && c.len() > 1) {
            // interval component: conjugate the per-object markers
            let td = &marker[&m.dom];
            let tc = &marker[&m.cod];
            compose_functors(tc, &td.inverse_functor()).expect("markers compose")
        } else {
            // one-object trivial group
            Functor::identity(&fiber_of[&m.dom])
        };
        transports.insert(m.name.clone(), t);
    }
    grothendieck(base, &fiber_of, &transports, orientation)
}

/// The Grothendieck construction for a functorial family of fibers and
/// transports, with the canonical split cleavage.
pub fn grothendieck(
    base: &FinCategory,
    fiber_of: &BTreeMap<String, FinCategory>,
    transports: &BTreeMap<String, Functor>,
    orientation: Orientation,
) -> Result<SplitFibration, CliError> {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    let mut composition = BTreeMap::new();
    let mut inverses = BTreeMap::new();
    let mut object_map = BTreeMap::new();
    let mut morphism_map = BTreeMap::new();
    for b in &base.objects {
        for xi in &fiber_of[b].objects {
            let name = pair_name(b, xi);
            objects.push(name.clone());
            object_map.insert(name, b.clone());
        }
    }
    // morphisms (m, phi) with phi : T(m)(xi) -> xi'
    struct Mor {
        name: String,
        m: String,
        phi: String,
        dom: String,
        cod: String,
    }
    let mut all: Vec<Mor> = Vec::new();
    for m in &base.morphisms {
        let t = &transports[&m.name];
        let fib_cod = &fiber_of[&m.cod];
        for phi in &fib_cod.morphisms {
            // xi = T(m)^{-1}(dom phi)
            let xi = t
                .inverse_functor()
                .apply_obj(&phi.dom)
                .to_string();
            let name = pair_name(&m.name, &phi.name);
            all.push(Mor {
                name: name.clone(),
                m: m.name.clone(),
                phi: phi.name.clone(),
                dom: pair_name(&m.dom, &xi),
                cod: pair_name(&m.cod, &phi.cod),
            });
        }
    }
    for mor in &all {
        morphisms.push(Morphism::new(mor.name.clone(), mor.dom.clone(), mor.cod.clone()));
        morphism_map.insert(mor.name.clone(), mor.m.clone());
    }
    for b in &base.objects {
        for xi in &fiber_of[b].objects {
            identities.insert(
                pair_name(b, xi),
                pair_name(base.identity(b), fiber_of[b].identity(xi)),
            );
        }
    }
    for m2 in &all {
        for m1 in &all {
            if m1.cod != m2.dom {
                continue;
            }
            let mm = base.compose(&m2.m, &m1.m).to_string();
            let t2 = &transports[&m2.m];
            let fib = &fiber_of[base.cod(&m2.m)];
            let phi = fib.compose(&m2.phi, t2.apply_mor(&m1.phi)).to_string();
            composition.insert((m2.name.clone(), m1.name.clone()), pair_name(&mm, &phi));
        }
    }
    for mor in &all {
        let m_inv = base.inverse(&mor.m).to_string();
        let t_inv = &transports[&m_inv];
        let fib = &fiber_of[base.cod(&mor.m)];
        let phi_inv = fib.inverse(&mor.phi).to_string();
        inverses.insert(mor.name.clone(), pair_name(&m_inv, t_inv.apply_mor(&phi_inv)));
    }
    let total = FinCategory::new(objects, morphisms, identities, composition, Some(inverses));
    total
        .check_tables()
        .map_err(|e| CliError::Schema { field: "generated total".into(), msg: e.to_string() })?;
    let functor = Functor::new(total.clone(), base.clone(), object_map, morphism_map);
    // cocartesian cleavage: lift of m at (b, xi) is (m, 1_{T(m) xi})
    let mut cleavage = BTreeMap::new();
    for m in &base.morphisms {
        let t = &transports[&m.name];
        let fib_cod = &fiber_of[&m.cod];
        for xi in &fiber_of[&m.dom].objects {
            let txi = t.apply_obj(xi);
            cleavage.insert(
                (pair_name(&m.dom, xi), m.name.clone()),
                pair_name(&m.name, fib_cod.identity(txi)),
            );
        }
    }
    let fib = SplitFibration { functor, orientation: Orientation::Cocartesian, cleavage };
    match orientation {
        Orientation::Cocartesian => Ok(fib),
        Orientation::Cartesian => awfslab_core::structured::fibration_opfibration_convert(&fib)
            .map_err(|e| CliError::Schema { field: "generated fibration".into(), msg: e.to_string() }),
    }
}

/// A split fibration with a freshly generated base.
pub fn gen_fibration(
    rng: &mut ChaCha8Rng,
    max_base_objects: usize,
    max_fiber_objects: usize,
    orientation: Orientation,
) -> Result<SplitFibration, CliError> {
    let base = gen_groupoid(rng, max_base_objects)?;
    gen_fibration_over(rng, &base, max_fiber_objects, orientation)
}

/// A split reflection built by freely adjoining one or two retracts to a
/// generated groupoid.
pub fn gen_reflection(rng: &mut ChaCha8Rng, max_objects: usize) -> Result<SplitReflection, CliError> {
    if max_objects < 2 {
        return Err(CliError::SizeOutOfRange("reflections need at least two objects".into()));
    }
    let dom = gen_groupoid(rng, (max_objects - 2).max(1))?;
    let clones = rng.gen_range(1..=2usize.min(max_objects - dom.objects.len()));
    let first_target = dom.objects[rng.gen_range(0..dom.objects.len())].clone();
    let mut refl = adjoin_retract(&dom, &first_target, "k0").map_err(core_err)?;
    for i in 1..clones {
        let cod = refl.cod_cat().clone();
        let target = cod.objects[rng.gen_range(0..cod.objects.len())].clone();
        let next = adjoin_retract(&cod, &target, &format!("k{i}")).map_err(core_err)?;
        refl = compose_split_reflections(&next, &refl).map_err(core_err)?;
    }
    Ok(refl)
}

fn core_err(e: awfslab_core::Error) -> CliError {
    CliError::Schema { field: "generated reflection".into(), msg: e.to_string() }
}

/// A uniformly chosen functor between two finite categories, if any exists.
pub fn gen_functor(rng: &mut ChaCha8Rng, src: &FinCategory, tgt: &FinCategory) -> Option<Functor> {
    let all = enumerate_all_functors(src, tgt);
    if all.is_empty() {
        None
    } else {
        Some(all[rng.gen_range(0..all.len())].clone())
    }
}

/// A uniformly chosen element of a functor list.
pub fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.gen_range(0..items.len())])
    }
}
