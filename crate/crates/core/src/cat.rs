//! Finite categories, functors and natural transformations as explicit
//! tables, with total validation of all algebraic laws by enumeration.
//!
//! Composition is written right-to-left throughout: the table entry for
//! `(g, f)` is `g.f`, meaning "apply `f` first". Object and morphism
//! identifiers are opaque strings and equality is name equality, so two
//! values are the same category exactly when their tables coincide.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// One arrow of a finite category: a name plus its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

impl Morphism {
    pub fn new(name: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        Morphism { name: name.into(), dom: dom.into(), cod: cod.into() }
    }
}

/// A finite category given by explicit tables, optionally a groupoid.
///
/// Invariants (checked by [`FinCategory::validate`], not assumed):
/// - `dom(g.f) = dom f` and `cod(g.f) = cod g` for every composable pair;
/// - identity laws and associativity, by full enumeration;
/// - when `inverses` is present, `f⁻¹.f` and `f.f⁻¹` are identities.
///
/// Identities are stored explicitly in the morphism set, and the groupoid
/// flag is the presence of the inverse table; neither is ever inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: BTreeMap<String, String>,
    /// `(g, f) -> g.f` for every pair with `dom g = cod f`.
    pub composition: BTreeMap<(String, String), String>,
    pub inverses: Option<BTreeMap<String, String>>,
}

impl FinCategory {
    /// Build a category, sorting the object and morphism lists so that
    /// equal categories have equal tables.
    pub fn new(
        mut objects: Vec<String>,
        mut morphisms: Vec<Morphism>,
        identities: BTreeMap<String, String>,
        composition: BTreeMap<(String, String), String>,
        inverses: Option<BTreeMap<String, String>>,
    ) -> Self {
        objects.sort();
        objects.dedup();
        morphisms.sort();
        FinCategory { objects, morphisms, identities, composition, inverses }
    }

    /// The terminal category: one object, its identity only.
    pub fn terminal(obj: &str) -> Self {
        FinCategory::discrete(&[obj])
    }

    /// A discrete category (identities only) on the given objects.
    pub fn discrete(objs: &[&str]) -> Self {
        let objects: Vec<String> = objs.iter().map(|o| o.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut identities = BTreeMap::new();
        let mut composition = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for o in &objects {
            let id = format!("id_{o}");
            morphisms.push(Morphism::new(id.clone(), o.clone(), o.clone()));
            identities.insert(o.clone(), id.clone());
            composition.insert((id.clone(), id.clone()), id.clone());
            inverses.insert(id.clone(), id);
        }
        FinCategory::new(objects, morphisms, identities, composition, Some(inverses))
    }

    /// The one-object groupoid of the cyclic group Z/n, with morphisms
    /// `r0` (identity), `r1`, ..., `r{n-1}` on the object `obj`.
    pub fn cyclic_group(obj: &str, n: usize) -> Self {
        assert!(n >= 1);
        let objects = alloc::vec![obj.to_string()];
        let name = |k: usize| format!("r{k}");
        let mut morphisms = Vec::new();
        let mut composition = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for k in 0..n {
            morphisms.push(Morphism::new(name(k), obj, obj));
            inverses.insert(name(k), name((n - k) % n));
            for j in 0..n {
                composition.insert((name(k), name(j)), name((k + j) % n));
            }
        }
        let mut identities = BTreeMap::new();
        identities.insert(obj.to_string(), name(0));
        FinCategory::new(objects, morphisms, identities, composition, Some(inverses))
    }

    /// The contractible groupoid on the given objects: exactly one morphism
    /// `m_{x}_{y}` between any two objects (an "interval" when there are two).
    pub fn contractible(objs: &[&str]) -> Self {
        let objects: Vec<String> = objs.iter().map(|o| o.to_string()).collect();
        let name = |x: &str, y: &str| format!("m_{x}_{y}");
        let mut morphisms = Vec::new();
        let mut identities = BTreeMap::new();
        let mut composition = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for x in &objects {
            identities.insert(x.clone(), name(x, x));
            for y in &objects {
                morphisms.push(Morphism::new(name(x, y), x.clone(), y.clone()));
                inverses.insert(name(x, y), name(y, x));
                for z in &objects {
                    composition.insert((name(y, z), name(x, y)), name(x, z));
                }
            }
        }
        FinCategory::new(objects, morphisms, identities, composition, Some(inverses))
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn has_object(&self, o: &str) -> bool {
        self.objects.iter().any(|x| x == o)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    /// Domain of a morphism; panics on unknown names (validate first).
    pub fn dom(&self, m: &str) -> &str {
        &self.morphism(m).unwrap_or_else(|| panic!("unknown morphism {m}")).dom
    }

    /// Codomain of a morphism; panics on unknown names (validate first).
    pub fn cod(&self, m: &str) -> &str {
        &self.morphism(m).unwrap_or_else(|| panic!("unknown morphism {m}")).cod
    }

    /// Identity morphism of an object; panics on unknown objects.
    pub fn identity(&self, o: &str) -> &str {
        self.identities.get(o).unwrap_or_else(|| panic!("no identity for object {o}"))
    }

    pub fn is_identity(&self, m: &str) -> bool {
        self.identities.values().any(|v| v == m)
    }

    pub fn try_compose(&self, g: &str, f: &str) -> Option<&str> {
        self.composition.get(&(g.to_string(), f.to_string())).map(|s| s.as_str())
    }

    /// Composite `g.f` (apply `f` first); panics when the pair is not in the
    /// table (validate first).
    pub fn compose(&self, g: &str, f: &str) -> &str {
        self.try_compose(g, f).unwrap_or_else(|| panic!("no composite for ({g}, {f})"))
    }

    /// Composite of a chain, rightmost applied first; empty chain is not allowed.
    pub fn compose_chain(&self, chain: &[&str]) -> String {
        let mut acc = chain[chain.len() - 1].to_string();
        for m in chain[..chain.len() - 1].iter().rev() {
            acc = self.compose(m, &acc).to_string();
        }
        acc
    }

    /// Inverse of a morphism in a groupoid; panics otherwise.
    pub fn inverse(&self, m: &str) -> &str {
        self.inverses
            .as_ref()
            .and_then(|t| t.get(m))
            .unwrap_or_else(|| panic!("no inverse for {m}"))
    }

    pub fn hom(&self, x: &str, y: &str) -> Vec<&Morphism> {
        self.morphisms.iter().filter(|m| m.dom == x && m.cod == y).collect()
    }

    pub fn morphisms_from(&self, x: &str) -> Vec<&Morphism> {
        self.morphisms.iter().filter(|m| m.dom == x).collect()
    }

    pub fn morphisms_to(&self, y: &str) -> Vec<&Morphism> {
        self.morphisms.iter().filter(|m| m.cod == y).collect()
    }

    /// Structural totality check: every referenced name exists, every
    /// required key is present, no duplicates. These are the preconditions
    /// under which the law checks of [`validate`](Self::validate) make sense.
    pub fn check_tables(&self) -> Result<()> {
        let objs: BTreeSet<&str> = self.objects.iter().map(|s| s.as_str()).collect();
        if objs.len() != self.objects.len() {
            return Err(Error::MalformedTable("duplicate object name".into()));
        }
        let mut mors: BTreeSet<&str> = BTreeSet::new();
        for m in &self.morphisms {
            if !mors.insert(&m.name) {
                return Err(Error::MalformedTable(format!("duplicate morphism name {}", m.name)));
            }
            if !objs.contains(m.dom.as_str()) {
                return Err(Error::MalformedTable(format!("morphism {} has unknown dom {}", m.name, m.dom)));
            }
            if !objs.contains(m.cod.as_str()) {
                return Err(Error::MalformedTable(format!("morphism {} has unknown cod {}", m.name, m.cod)));
            }
        }
        for o in &self.objects {
            match self.identities.get(o) {
                None => return Err(Error::MalformedTable(format!("missing identity for object {o}"))),
                Some(i) if !mors.contains(i.as_str()) => {
                    return Err(Error::MalformedTable(format!("identity of {o} is unknown morphism {i}")))
                }
                _ => {}
            }
        }
        for (o, _) in &self.identities {
            if !objs.contains(o.as_str()) {
                return Err(Error::MalformedTable(format!("identity entry for unknown object {o}")));
            }
        }
        for ((g, f), gf) in &self.composition {
            for n in [g, f, gf] {
                if !mors.contains(n.as_str()) {
                    return Err(Error::MalformedTable(format!("composition entry references unknown morphism {n}")));
                }
            }
        }
        for g in &self.morphisms {
            for f in &self.morphisms {
                if f.cod == g.dom && !self.composition.contains_key(&(g.name.clone(), f.name.clone())) {
                    return Err(Error::MalformedTable(format!(
                        "missing composite for composable pair ({}, {})",
                        g.name, f.name
                    )));
                }
            }
        }
        if let Some(inv) = &self.inverses {
            for m in &self.morphisms {
                match inv.get(&m.name) {
                    None => return Err(Error::MalformedTable(format!("missing inverse for {}", m.name))),
                    Some(i) if !mors.contains(i.as_str()) => {
                        return Err(Error::MalformedTable(format!("inverse of {} is unknown morphism {i}", m.name)))
                    }
                    _ => {}
                }
            }
            for (m, _) in inv {
                if !mors.contains(m.as_str()) {
                    return Err(Error::MalformedTable(format!("inverse entry for unknown morphism {m}")));
                }
            }
        }
        Ok(())
    }

    /// Check every categorical law by full enumeration and report all
    /// violations with their witnessing tuples.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_tables()?;
        let mut r = ValidationReport::new();
        for o in &self.objects {
            let i = self.identity(o);
            let m = self.morphism(i).unwrap();
            if m.dom != *o || m.cod != *o {
                r.push("identity.endpoints", format!("id of {o} is {i}: {} -> {}", m.dom, m.cod));
            }
        }
        for ((g, f), gf) in &self.composition {
            let (mg, mf, mgf) = (self.morphism(g).unwrap(), self.morphism(f).unwrap(), self.morphism(gf).unwrap());
            if mf.cod != mg.dom {
                r.push("composition.key", format!("({g}, {f}) not composable"));
            }
            if mgf.dom != mf.dom || mgf.cod != mg.cod {
                r.push(
                    "composition.endpoints",
                    format!("{g}.{f} = {gf}: {} -> {}, expected {} -> {}", mgf.dom, mgf.cod, mf.dom, mg.cod),
                );
            }
        }
        for f in &self.morphisms {
            let idd = self.identity(&f.dom);
            if self.try_compose(&f.name, idd) != Some(f.name.as_str()) {
                r.push("identity.right", format!("{}.{} != {}", f.name, idd, f.name));
            }
            let idc = self.identity(&f.cod);
            if self.try_compose(idc, &f.name) != Some(f.name.as_str()) {
                r.push("identity.left", format!("{}.{} != {}", idc, f.name, f.name));
            }
        }
        // Associativity over every composable triple.
        for f in &self.morphisms {
            for g in &self.morphisms {
                if g.dom != f.cod {
                    continue;
                }
                for h in &self.morphisms {
                    if h.dom != g.cod {
                        continue;
                    }
                    let gf = self.compose(&g.name, &f.name).to_string();
                    let hg = self.compose(&h.name, &g.name).to_string();
                    let left = self.try_compose(&h.name, &gf);
                    let right = self.try_compose(&hg, &f.name);
                    if left != right || left.is_none() {
                        r.push(
                            "associativity",
                            format!("h={} g={} f={}: {:?} != {:?}", h.name, g.name, f.name, left, right),
                        );
                    }
                }
            }
        }
        if let Some(inv) = &self.inverses {
            for m in &self.morphisms {
                let i = &inv[&m.name];
                let mi = self.morphism(i).unwrap();
                if mi.dom != m.cod || mi.cod != m.dom {
                    r.push("inverse.endpoints", format!("{}⁻¹ = {i}: {} -> {}", m.name, mi.dom, mi.cod));
                    continue;
                }
                if self.try_compose(i, &m.name) != Some(self.identity(&m.dom)) {
                    r.push("inverse.left", format!("{i}.{} != id_{}", m.name, m.dom));
                }
                if self.try_compose(&m.name, i) != Some(self.identity(&m.cod)) {
                    r.push("inverse.right", format!("{}.{i} != id_{}", m.name, m.cod));
                }
            }
        }
        Ok(r)
    }

    /// Relabel objects and morphisms along the given injective maps.
    /// Names not present in a map are kept.
    pub fn rename(
        &self,
        obj_map: &BTreeMap<String, String>,
        mor_map: &BTreeMap<String, String>,
    ) -> FinCategory {
        let ro = |o: &str| obj_map.get(o).cloned().unwrap_or_else(|| o.to_string());
        let rm = |m: &str| mor_map.get(m).cloned().unwrap_or_else(|| m.to_string());
        FinCategory::new(
            self.objects.iter().map(|o| ro(o)).collect(),
            self.morphisms.iter().map(|m| Morphism::new(rm(&m.name), ro(&m.dom), ro(&m.cod))).collect(),
            self.identities.iter().map(|(o, m)| (ro(o), rm(m))).collect(),
            self.composition.iter().map(|((g, f), gf)| ((rm(g), rm(f)), rm(gf))).collect(),
            self.inverses
                .as_ref()
                .map(|t| t.iter().map(|(m, i)| (rm(m), rm(i))).collect()),
        )
    }
}

/// A functor between finite categories, given by total object and morphism
/// maps. Owns copies of its endpoints so that equality is table equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCategory,
    pub target: FinCategory,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

impl Functor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        object_map: BTreeMap<String, String>,
        morphism_map: BTreeMap<String, String>,
    ) -> Self {
        Functor { source, target, object_map, morphism_map }
    }

    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            morphism_map: c.morphisms.iter().map(|m| (m.name.clone(), m.name.clone())).collect(),
        }
    }

    /// Build a functor from closures over the source's objects/morphisms.
    pub fn from_maps(
        source: &FinCategory,
        target: &FinCategory,
        fo: impl Fn(&str) -> String,
        fm: impl Fn(&str) -> String,
    ) -> Self {
        Functor {
            source: source.clone(),
            target: target.clone(),
            object_map: source.objects.iter().map(|o| (o.clone(), fo(o))).collect(),
            morphism_map: source.morphisms.iter().map(|m| (m.name.clone(), fm(&m.name))).collect(),
        }
    }

    /// The constant functor at an object of the target.
    pub fn constant(source: &FinCategory, target: &FinCategory, at: &str) -> Self {
        let id = target.identity(at).to_string();
        Functor::from_maps(source, target, |_| at.to_string(), |_| id.clone())
    }

    pub fn apply_obj(&self, o: &str) -> &str {
        self.object_map.get(o).unwrap_or_else(|| panic!("functor undefined on object {o}"))
    }

    pub fn apply_mor(&self, m: &str) -> &str {
        self.morphism_map.get(m).unwrap_or_else(|| panic!("functor undefined on morphism {m}"))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.object_map.iter().all(|(a, b)| a == b)
            && self.morphism_map.iter().all(|(a, b)| a == b)
    }

    /// Bijective on objects and morphisms (an isomorphism once it validates).
    pub fn is_bijective(&self) -> bool {
        let objs: BTreeSet<&String> = self.object_map.values().collect();
        let mors: BTreeSet<&String> = self.morphism_map.values().collect();
        objs.len() == self.source.objects.len()
            && objs.len() == self.target.objects.len()
            && mors.len() == self.source.morphisms.len()
            && mors.len() == self.target.morphisms.len()
    }

    /// Inverse of a bijective validated functor.
    pub fn inverse_functor(&self) -> Functor {
        assert!(self.is_bijective(), "inverse of a non-bijective functor");
        Functor {
            source: self.target.clone(),
            target: self.source.clone(),
            object_map: self.object_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            morphism_map: self.morphism_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// Totality plus preservation of endpoints, identities and composition,
    /// by full enumeration.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.source.check_tables()?;
        self.target.check_tables()?;
        for o in &self.source.objects {
            let i = self
                .object_map
                .get(o)
                .ok_or_else(|| Error::MalformedTable(format!("object map missing {o}")))?;
            if !self.target.has_object(i) {
                return Err(Error::MalformedTable(format!("object map sends {o} to unknown {i}")));
            }
        }
        for m in &self.source.morphisms {
            let i = self
                .morphism_map
                .get(&m.name)
                .ok_or_else(|| Error::MalformedTable(format!("morphism map missing {}", m.name)))?;
            if self.target.morphism(i).is_none() {
                return Err(Error::MalformedTable(format!("morphism map sends {} to unknown {i}", m.name)));
            }
        }
        let mut r = ValidationReport::new();
        for m in &self.source.morphisms {
            let fm = self.target.morphism(self.apply_mor(&m.name)).unwrap();
            if fm.dom != *self.apply_obj(&m.dom) || fm.cod != *self.apply_obj(&m.cod) {
                r.push("functor.endpoints", format!("{}: image {} has wrong endpoints", m.name, fm.name));
            }
        }
        for o in &self.source.objects {
            if self.apply_mor(self.source.identity(o)) != self.target.identity(self.apply_obj(o)) {
                r.push("functor.identity", format!("F(id_{o}) != id_F({o})"));
            }
        }
        for ((g, f), gf) in &self.source.composition {
            let lhs = self.apply_mor(gf);
            let rhs = self.target.try_compose(self.apply_mor(g), self.apply_mor(f));
            if rhs != Some(lhs) {
                r.push("functor.composition", format!("F({g}.{f}) = {lhs} != F({g}).F({f}) = {rhs:?}"));
            }
        }
        Ok(r)
    }
}

/// Pointwise composite `g.f`; the result preserves all laws whenever the
/// inputs do.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor> {
    if f.target != g.source {
        return Err(Error::BoundaryMismatch("compose_functors: target of f != source of g".into()));
    }
    Ok(Functor {
        source: f.source.clone(),
        target: g.target.clone(),
        object_map: f.object_map.iter().map(|(o, v)| (o.clone(), g.apply_obj(v).to_string())).collect(),
        morphism_map: f
            .morphism_map
            .iter()
            .map(|(m, v)| (m.clone(), g.apply_mor(v).to_string()))
            .collect(),
    })
}

/// A natural transformation between parallel functors, one component per
/// object of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: BTreeMap<String, String>,
}

impl NatTransformation {
    pub fn new(source: Functor, target: Functor, components: BTreeMap<String, String>) -> Self {
        NatTransformation { source, target, components }
    }

    pub fn identity(f: &Functor) -> Self {
        let components = f
            .source
            .objects
            .iter()
            .map(|o| (o.clone(), f.target.identity(f.apply_obj(o)).to_string()))
            .collect();
        NatTransformation { source: f.clone(), target: f.clone(), components }
    }

    pub fn component(&self, o: &str) -> &str {
        self.components.get(o).unwrap_or_else(|| panic!("no component at {o}"))
    }

    /// Component endpoints plus the naturality square for every morphism of
    /// the source, by full enumeration.
    pub fn validate(&self) -> Result<ValidationReport> {
        if self.source.source != self.target.source || self.source.target != self.target.target {
            return Err(Error::BoundaryMismatch("nat: functors not parallel".into()));
        }
        let cat = &self.source.target;
        for o in &self.source.source.objects {
            let c = self
                .components
                .get(o)
                .ok_or_else(|| Error::MalformedTable(format!("nat missing component at {o}")))?;
            if cat.morphism(c).is_none() {
                return Err(Error::MalformedTable(format!("nat component at {o} is unknown morphism {c}")));
            }
        }
        let mut r = ValidationReport::new();
        for o in &self.source.source.objects {
            let c = cat.morphism(self.component(o)).unwrap();
            if c.dom != *self.source.apply_obj(o) || c.cod != *self.target.apply_obj(o) {
                r.push("nat.endpoints", format!("component at {o} has wrong endpoints"));
            }
        }
        for m in &self.source.source.morphisms {
            let lhs = cat.try_compose(self.component(&m.cod), self.source.apply_mor(&m.name));
            let rhs = cat.try_compose(self.target.apply_mor(&m.name), self.component(&m.dom));
            if lhs != rhs || lhs.is_none() {
                r.push("nat.naturality", format!("square at {} fails: {lhs:?} != {rhs:?}", m.name));
            }
        }
        Ok(r)
    }
}

/// The name of a pair in a strict pullback category.
pub fn pair_name(a: &str, c: &str) -> String {
    format!("({a},{c})")
}

/// Split a pair name produced by [`pair_name`] back into its components,
/// honouring nesting.
pub fn split_pair_name(n: &str) -> Option<(&str, &str)> {
    let inner = n.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Strict pullback of `f : A -> B` and `g : C -> B` in Cat.
///
/// Objects are pairs `(a,c)` with `f a = g c`, morphisms are pairs with equal
/// images, both composed componentwise. Returns the pullback category and the
/// two projections. The universal property is not assumed here; it is checked
/// on demand by enumeration in the test suite.
pub fn pullback_category(f: &Functor, g: &Functor) -> Result<(FinCategory, Functor, Functor)> {
    if f.target != g.target {
        return Err(Error::BoundaryMismatch("pullback_category: targets differ".into()));
    }
    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    for a in &f.source.objects {
        for c in &g.source.objects {
            if f.apply_obj(a) == g.apply_obj(c) {
                objects.push(pair_name(a, c));
                obj_pairs.push((a.clone(), c.clone()));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    for m in &f.source.morphisms {
        for n in &g.source.morphisms {
            if f.apply_mor(&m.name) == g.apply_mor(&n.name) {
                morphisms.push(Morphism::new(
                    pair_name(&m.name, &n.name),
                    pair_name(&m.dom, &n.dom),
                    pair_name(&m.cod, &n.cod),
                ));
                mor_pairs.push((m.name.clone(), n.name.clone()));
            }
        }
    }
    let identities: BTreeMap<String, String> = obj_pairs
        .iter()
        .map(|(a, c)| (pair_name(a, c), pair_name(f.source.identity(a), g.source.identity(c))))
        .collect();
    let mut composition = BTreeMap::new();
    for (m2, n2) in &mor_pairs {
        for (m1, n1) in &mor_pairs {
            if f.source.cod(m1) == f.source.dom(m2) && g.source.cod(n1) == g.source.dom(n2) {
                composition.insert(
                    (pair_name(m2, n2), pair_name(m1, n1)),
                    pair_name(f.source.compose(m2, m1), g.source.compose(n2, n1)),
                );
            }
        }
    }
    let inverses = match (&f.source.inverses, &g.source.inverses) {
        (Some(_), Some(_)) => Some(
            mor_pairs
                .iter()
                .map(|(m, n)| (pair_name(m, n), pair_name(f.source.inverse(m), g.source.inverse(n))))
                .collect(),
        ),
        _ => None,
    };
    let pb = FinCategory::new(objects, morphisms, identities.clone(), composition, inverses);
    pb.check_tables()?;
    let proj1 = Functor::new(
        pb.clone(),
        f.source.clone(),
        obj_pairs.iter().map(|(a, c)| (pair_name(a, c), a.clone())).collect(),
        mor_pairs.iter().map(|(m, n)| (pair_name(m, n), m.clone())).collect(),
    );
    let proj2 = Functor::new(
        pb.clone(),
        g.source.clone(),
        obj_pairs.iter().map(|(a, c)| (pair_name(a, c), c.clone())).collect(),
        mor_pairs.iter().map(|(m, n)| (pair_name(m, n), n.clone())).collect(),
    );
    Ok((pb, proj1, proj2))
}
