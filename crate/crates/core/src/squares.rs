//! Commutative squares, slice morphisms, and the brute-force lifting-problem
//! oracle every other check in this crate is measured against.
//!
//! A lifting problem `(u, v) : f -> g` is a commutative square of functors; a
//! diagonal filler is a functor `phi : cod f -> dom g` with `phi.f = u` and
//! `g.phi = v`. [`enumerate_fillers`] finds the complete set of fillers by
//! backtracking over object and morphism assignments with early pruning, in
//! identifier order, so its output ordering is deterministic.
//!
//! Transposition of lifting problems along an adjunction happens at the
//! morphism level of a pair of adjoint finite categories ([`ArrowSquare`]);
//! the slice categories it is applied to are materialised as finite
//! categories by the transport layer.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::adjunction::AdjunctionWitness;
use crate::cat::{compose_functors, FinCategory, Functor, Morphism};
use crate::error::{Error, Result};

/// A commutative square `(top, bottom) : left -> right` of functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub left: Functor,
    pub right: Functor,
    pub top: Functor,
    pub bottom: Functor,
}

impl Square {
    /// Build a square, checking boundaries and commutation (table equality).
    pub fn new(left: Functor, right: Functor, top: Functor, bottom: Functor) -> Result<Square> {
        if top.source != left.source
            || top.target != right.source
            || bottom.source != left.target
            || bottom.target != right.target
        {
            return Err(Error::BoundaryMismatch("square: functor endpoints do not match".into()));
        }
        let lhs = compose_functors(&right, &top)?;
        let rhs = compose_functors(&bottom, &left)?;
        if lhs != rhs {
            return Err(Error::NonCommutingProblem("square does not commute".into()));
        }
        Ok(Square { left, right, top, bottom })
    }

    /// The identity square on a functor (identity top and bottom).
    pub fn identity(f: &Functor) -> Square {
        Square {
            left: f.clone(),
            right: f.clone(),
            top: Functor::identity(&f.source),
            bottom: Functor::identity(&f.target),
        }
    }
}

/// Horizontal composite: `s1 : f -> g`, `s2 : g -> h` gives `f -> h`.
pub fn compose_squares_h(s2: &Square, s1: &Square) -> Result<Square> {
    if s1.right != s2.left {
        return Err(Error::BoundaryMismatch("compose_squares_h: inner legs differ".into()));
    }
    Square::new(
        s1.left.clone(),
        s2.right.clone(),
        compose_functors(&s2.top, &s1.top)?,
        compose_functors(&s2.bottom, &s1.bottom)?,
    )
}

/// Vertical composite with `s1` on top of `s2`; requires
/// `bottom(s1) = top(s2)` on the nose.
pub fn compose_squares_v(s2: &Square, s1: &Square) -> Result<Square> {
    if s1.bottom != s2.top {
        return Err(Error::BoundaryMismatch("compose_squares_v: shared edge differs".into()));
    }
    Square::new(
        compose_functors(&s2.left, &s1.left)?,
        compose_functors(&s2.right, &s1.right)?,
        s1.top.clone(),
        s2.bottom.clone(),
    )
}

/// A morphism of a slice category in the arrow view: a map `f` together with
/// an extension `a` of its codomain to the base, i.e. the pair `(f, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceMorphism {
    pub map: Functor,
    pub extension: Functor,
}

impl SliceMorphism {
    pub fn new(map: Functor, extension: Functor) -> Result<SliceMorphism> {
        if map.target != extension.source {
            return Err(Error::NotComposableInSlice("slice morphism: cod f != dom a".into()));
        }
        Ok(SliceMorphism { map, extension })
    }

    pub fn base(&self) -> &FinCategory {
        &self.extension.target
    }

    /// The domain object of the slice arrow, `a.f`.
    pub fn dom_object(&self) -> Functor {
        compose_functors(&self.extension, &self.map).expect("slice morphism invariant")
    }

    /// The codomain object of the slice arrow, `a` itself.
    pub fn cod_object(&self) -> &Functor {
        &self.extension
    }

    /// The slice identity `(1, a)` on the object `a`.
    pub fn identity_on(a: &Functor) -> SliceMorphism {
        SliceMorphism { map: Functor::identity(&a.source), extension: a.clone() }
    }
}

/// Composition of slice morphisms: `(g, b).(f, a) = (g.f, b)` provided
/// `a = b.g`.
pub fn slice_morphism_compose(m2: &SliceMorphism, m1: &SliceMorphism) -> Result<SliceMorphism> {
    let needed = compose_functors(&m2.extension, &m2.map)?;
    if m1.extension != needed {
        return Err(Error::NotComposableInSlice("slice compose: a1 != a2.f2".into()));
    }
    SliceMorphism::new(compose_functors(&m2.map, &m1.map)?, m2.extension.clone())
}

/// A lifting problem together with its complete, deterministically ordered
/// set of diagonal fillers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillerSet {
    pub problem: Square,
    pub fillers: Vec<Functor>,
}

impl FillerSet {
    pub fn contains(&self, phi: &Functor) -> bool {
        self.fillers.iter().any(|f| f == phi)
    }
}

struct Search<'a> {
    dom: &'a FinCategory,
    cod: &'a FinCategory,
    obj_candidates: &'a dyn Fn(&str) -> Vec<String>,
    mor_candidates: &'a dyn Fn(&Morphism) -> Vec<String>,
    forced_obj: &'a BTreeMap<String, String>,
    forced_mor: &'a BTreeMap<String, String>,
    free_mors: Vec<&'a Morphism>,
    out: Vec<Functor>,
}

impl<'a> Search<'a> {
    /// Close a partial morphism assignment under composition; false on clash.
    fn close(&self, mor_map: &mut BTreeMap<String, String>) -> bool {
        loop {
            let mut pending: Vec<(String, String)> = Vec::new();
            for ((g, f), gf) in &self.dom.composition {
                if let (Some(ig), Some(if_)) = (mor_map.get(g), mor_map.get(f)) {
                    let comp = match self.cod.try_compose(ig, if_) {
                        Some(c) => c.to_string(),
                        None => return false,
                    };
                    match mor_map.get(gf) {
                        Some(prev) if *prev != comp => return false,
                        Some(_) => {}
                        None => pending.push((gf.clone(), comp)),
                    }
                }
            }
            if pending.is_empty() {
                return true;
            }
            for (k, v) in pending {
                match mor_map.get(&k) {
                    Some(prev) if *prev != v => return false,
                    _ => {
                        mor_map.insert(k, v);
                    }
                }
            }
        }
    }

    fn assign_objects(&mut self, idx: usize, obj_map: &mut BTreeMap<String, String>) {
        if idx == self.dom.objects.len() {
            let mut mor_map: BTreeMap<String, String> = BTreeMap::new();
            for o in &self.dom.objects {
                mor_map.insert(self.dom.identity(o).to_string(), self.cod.identity(&obj_map[o]).to_string());
            }
            for (m, v) in self.forced_mor {
                let rec = match self.dom.morphism(m) {
                    Some(r) => r,
                    None => return,
                };
                let img = match self.cod.morphism(v) {
                    Some(r) => r,
                    None => return,
                };
                if img.dom != obj_map[&rec.dom] || img.cod != obj_map[&rec.cod] {
                    return;
                }
                if let Some(prev) = mor_map.get(m) {
                    if prev != v {
                        return;
                    }
                }
                mor_map.insert(m.clone(), v.clone());
            }
            if !self.close(&mut mor_map) {
                return;
            }
            self.assign_morphisms(0, obj_map, &mut mor_map);
            return;
        }
        let o = self.dom.objects[idx].clone();
        let cands = match self.forced_obj.get(&o) {
            Some(v) => alloc::vec![v.clone()],
            None => (self.obj_candidates)(&o),
        };
        for cand in cands {
            if !self.cod.has_object(&cand) {
                continue;
            }
            obj_map.insert(o.clone(), cand);
            self.assign_objects(idx + 1, obj_map);
        }
        obj_map.remove(&o);
    }

    fn assign_morphisms(&mut self, idx: usize, obj_map: &BTreeMap<String, String>, mor_map: &mut BTreeMap<String, String>) {
        let mut i = idx;
        while i < self.free_mors.len() && mor_map.contains_key(&self.free_mors[i].name) {
            i += 1;
        }
        if i == self.free_mors.len() {
            if mor_map.len() == self.dom.morphisms.len() {
                self.out.push(Functor {
                    source: self.dom.clone(),
                    target: self.cod.clone(),
                    object_map: obj_map.clone(),
                    morphism_map: mor_map.clone(),
                });
            }
            return;
        }
        let m = self.free_mors[i];
        for cand in (self.mor_candidates)(m) {
            let img = match self.cod.morphism(&cand) {
                Some(r) => r,
                None => continue,
            };
            if img.dom != obj_map[&m.dom] || img.cod != obj_map[&m.cod] {
                continue;
            }
            let mut trial = mor_map.clone();
            trial.insert(m.name.clone(), cand);
            if self.close(&mut trial) {
                self.assign_morphisms(i + 1, obj_map, &mut trial);
            }
        }
    }
}

/// Enumerate functors `dom -> cod` subject to per-object / per-morphism
/// candidate sets and a forced partial assignment. Identities are determined
/// by the object assignment; composites of assigned morphisms propagate
/// eagerly so most of the space is pruned before it is visited.
pub(crate) fn search_functors(
    dom: &FinCategory,
    cod: &FinCategory,
    obj_candidates: &dyn Fn(&str) -> Vec<String>,
    mor_candidates: &dyn Fn(&Morphism) -> Vec<String>,
    forced_obj: &BTreeMap<String, String>,
    forced_mor: &BTreeMap<String, String>,
) -> Vec<Functor> {
    let free_mors: Vec<&Morphism> = dom
        .morphisms
        .iter()
        .filter(|m| !dom.is_identity(&m.name) && !forced_mor.contains_key(&m.name))
        .collect();
    let mut search = Search {
        dom,
        cod,
        obj_candidates,
        mor_candidates,
        forced_obj,
        forced_mor,
        free_mors,
        out: Vec::new(),
    };
    let mut obj_map = BTreeMap::new();
    search.assign_objects(0, &mut obj_map);
    let mut out = search.out;
    out.sort_by(|a, b| (&a.object_map, &a.morphism_map).cmp(&(&b.object_map, &b.morphism_map)));
    out.dedup();
    out
}

/// All functors `h : X -> Y` over a common base, i.e. with `y.h = x`.
pub fn enumerate_functors_over(x: &Functor, y: &Functor) -> Result<Vec<Functor>> {
    if x.target != y.target {
        return Err(Error::BoundaryMismatch("enumerate_functors_over: bases differ".into()));
    }
    let dom = &x.source;
    let cod = &y.source;
    let obj_c = |o: &str| -> Vec<String> {
        cod.objects.iter().filter(|p| y.apply_obj(p) == x.apply_obj(o)).cloned().collect()
    };
    let mor_c = |m: &Morphism| -> Vec<String> {
        cod.morphisms
            .iter()
            .filter(|n| y.apply_mor(&n.name) == x.apply_mor(&m.name))
            .map(|n| n.name.clone())
            .collect()
    };
    Ok(search_functors(dom, cod, &obj_c, &mor_c, &BTreeMap::new(), &BTreeMap::new()))
}

/// Every functor between two finite categories, in the deterministic
/// search order.
pub fn enumerate_all_functors(src: &FinCategory, tgt: &FinCategory) -> Vec<Functor> {
    let obj_c = |_: &str| -> Vec<String> { tgt.objects.clone() };
    let mor_c = |m: &Morphism| -> Vec<String> {
        let _ = m;
        tgt.morphisms.iter().map(|n| n.name.clone()).collect()
    };
    search_functors(src, tgt, &obj_c, &mor_c, &BTreeMap::new(), &BTreeMap::new())
}

/// The complete set of diagonal fillers of a lifting problem, found by
/// exhaustive backtracking. An empty set is a legal result.
pub fn enumerate_fillers(s: &Square) -> FillerSet {
    let (f, g, u, v) = (&s.left, &s.right, &s.top, &s.bottom);
    let dom = &f.target; // cod f
    let cod = &g.source; // dom g
    let empty = || FillerSet { problem: s.clone(), fillers: Vec::new() };

    // phi.f = u forces phi on the image of f.
    let mut forced_obj: BTreeMap<String, String> = BTreeMap::new();
    for x in &f.source.objects {
        let key = f.apply_obj(x).to_string();
        let val = u.apply_obj(x).to_string();
        match forced_obj.get(&key) {
            Some(prev) if *prev != val => return empty(),
            _ => {
                forced_obj.insert(key, val);
            }
        }
    }
    let mut forced_mor: BTreeMap<String, String> = BTreeMap::new();
    for m in &f.source.morphisms {
        let key = f.apply_mor(&m.name).to_string();
        let val = u.apply_mor(&m.name).to_string();
        match forced_mor.get(&key) {
            Some(prev) if *prev != val => return empty(),
            _ => {
                forced_mor.insert(key, val);
            }
        }
    }
    // g.phi = v constrains every assignment to the fiber over v.
    for (k, val) in &forced_obj {
        if g.apply_obj(val) != v.apply_obj(k) {
            return empty();
        }
    }
    for (k, val) in &forced_mor {
        if g.apply_mor(val) != v.apply_mor(k) {
            return empty();
        }
    }
    let obj_c = |o: &str| -> Vec<String> {
        cod.objects.iter().filter(|p| g.apply_obj(p) == v.apply_obj(o)).cloned().collect()
    };
    let mor_c = |m: &Morphism| -> Vec<String> {
        cod.morphisms
            .iter()
            .filter(|n| g.apply_mor(&n.name) == v.apply_mor(&m.name))
            .map(|n| n.name.clone())
            .collect()
    };
    let fillers = search_functors(dom, cod, &obj_c, &mor_c, &forced_obj, &forced_mor);
    FillerSet { problem: s.clone(), fillers }
}

/// A commuting square of morphisms inside one finite category:
/// `right.top = bottom.left`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowSquare {
    pub cat: FinCategory,
    pub left: String,
    pub right: String,
    pub top: String,
    pub bottom: String,
}

impl ArrowSquare {
    pub fn new(cat: FinCategory, left: String, right: String, top: String, bottom: String) -> Result<ArrowSquare> {
        for m in [&left, &right, &top, &bottom] {
            if cat.morphism(m).is_none() {
                return Err(Error::MalformedTable(alloc::format!("arrow square references unknown morphism {m}")));
            }
        }
        let lhs = cat.try_compose(&right, &top);
        let rhs = cat.try_compose(&bottom, &left);
        if lhs.is_none() || lhs != rhs {
            return Err(Error::NonCommutingProblem("arrow square does not commute".into()));
        }
        Ok(ArrowSquare { cat, left, right, top, bottom })
    }

    /// All diagonal fillers `phi : cod(left) -> dom(right)` with
    /// `phi.left = top` and `right.phi = bottom`, in identifier order.
    pub fn fillers(&self) -> Vec<String> {
        let c = &self.cat;
        let from = c.cod(&self.left).to_string();
        let to = c.dom(&self.right).to_string();
        c.hom(&from, &to)
            .into_iter()
            .filter(|phi| {
                c.try_compose(&phi.name, &self.left) == Some(self.top.as_str())
                    && c.try_compose(&self.right, &phi.name) == Some(self.bottom.as_str())
            })
            .map(|m| m.name.clone())
            .collect()
    }
}

/// Transpose a lifting problem `(u, v) : j -> G k` along `F ⊣ G` into the
/// problem `(ε.F u, ε.F v) : F j -> k`.
///
/// The square lives in the source category of `F`; `k` is a morphism of the
/// target category whose `G`-image is the square's right leg.
pub fn transpose_lifting_problem(adj: &AdjunctionWitness, s: &ArrowSquare, k: &str) -> Result<ArrowSquare> {
    adj.require_valid()?;
    let c = &adj.left.source;
    let d = &adj.left.target;
    if s.cat != *c {
        return Err(Error::BoundaryMismatch("transpose: square does not live in the left source".into()));
    }
    if d.morphism(k).is_none() {
        return Err(Error::MalformedTable(alloc::format!("transpose: unknown morphism {k}")));
    }
    if adj.right.apply_mor(k) != s.right {
        return Err(Error::BoundaryMismatch("transpose: right leg of the square is not G(k)".into()));
    }
    let (ka, kb) = (d.dom(k).to_string(), d.cod(k).to_string());
    let u_bar = d.compose(adj.counit.component(&ka), adj.left.apply_mor(&s.top)).to_string();
    let v_bar = d.compose(adj.counit.component(&kb), adj.left.apply_mor(&s.bottom)).to_string();
    ArrowSquare::new(d.clone(), adj.left.apply_mor(&s.left).to_string(), k.to_string(), u_bar, v_bar)
}

/// Transpose a problem `(p, q) : F j -> k` back to `(G p.η, G q.η) : j -> G k`.
pub fn transpose_lifting_problem_back(adj: &AdjunctionWitness, s: &ArrowSquare, j: &str) -> Result<ArrowSquare> {
    adj.require_valid()?;
    let c = &adj.left.source;
    let d = &adj.left.target;
    if s.cat != *d {
        return Err(Error::BoundaryMismatch("transpose back: square does not live in the right source".into()));
    }
    if c.morphism(j).is_none() {
        return Err(Error::MalformedTable(alloc::format!("transpose back: unknown morphism {j}")));
    }
    if adj.left.apply_mor(j) != s.left {
        return Err(Error::BoundaryMismatch("transpose back: left leg of the square is not F(j)".into()));
    }
    let (jx, jy) = (c.dom(j).to_string(), c.cod(j).to_string());
    let u = c.compose(adj.right.apply_mor(&s.top), adj.unit.component(&jx)).to_string();
    let v = c.compose(adj.right.apply_mor(&s.bottom), adj.unit.component(&jy)).to_string();
    ArrowSquare::new(c.clone(), j.to_string(), adj.right.apply_mor(&s.right).to_string(), u, v)
}

/// A filler of the transposed problem pulled back to the original:
/// `phi |-> G(phi).η_{cod j}`.
pub fn transpose_filler_back(adj: &AdjunctionWitness, phi: &str, cod_j: &str) -> String {
    adj.left
        .source
        .compose(adj.right.apply_mor(phi), adj.unit.component(cod_j))
        .to_string()
}

/// A filler of the original problem pushed to the transposed one:
/// `psi |-> ε_{dom k}.F(psi)`.
pub fn transpose_filler_to(adj: &AdjunctionWitness, psi: &str, dom_k: &str) -> String {
    adj.left
        .target
        .compose(adj.counit.component(dom_k), adj.left.apply_mor(psi))
        .to_string()
}
