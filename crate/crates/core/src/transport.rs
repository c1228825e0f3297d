//! Base change on slices of finite groupoids: pullback `f*`, composition
//! `f_!`, and pushforward `f_*` along split fibrations, together with the
//! adjunction oracle certifying `f* ⊣ f_*` and the mates `alpha` and `beta`.
//!
//! The pushforward is realised by the explicit section-groupoid
//! construction: an object of `f_* x` over `b` is a section of `x` over the
//! fiber `A_b`; a morphism over `beta : b -> b'` is a natural family lying
//! over the chosen cocartesian lifts of `beta`. Split transport between
//! groupoid fibers is invertible, which is what makes the projection of
//! `f_* x` a split fibration again when `x` is one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cat::{
    compose_functors, pair_name, pullback_category, split_pair_name, FinCategory, Functor, Morphism,
};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::squares::{enumerate_functors_over, SliceMorphism, Square};
use crate::structured::{fibration_opfibration_convert, fiber_of, Orientation, SplitFibration};

/// A map of `C/B` pulled back to `C/A`: the result `(f*g, f*b)` plus the
/// projections of the two pullbacks back to the original categories.
#[derive(Debug, Clone)]
pub struct PulledBackArrow {
    pub slice: SliceMorphism,
    /// Projection of the domain pullback to the original domain.
    pub proj_dom: Functor,
    /// Projection of the codomain pullback to the original codomain.
    pub proj_cod: Functor,
}

/// Pullback applied at the arrow level: `f*(g, b) = (f*g, f*b)`.
pub fn pullback_arrows(f: &Functor, m: &SliceMorphism) -> Result<PulledBackArrow> {
    if m.base() != &f.target {
        return Err(Error::BoundaryMismatch("pullback_arrows: slice base != target of f".into()));
    }
    let b = &m.extension;
    let bg = compose_functors(b, &m.map)?;
    let (p0, p0_over, p0_orig) = pullback_category(f, &bg)?;
    let (_p1, p1_over, p1_orig) = pullback_category(f, b)?;
    // induced comparison (a, w) |-> (a, g w)
    let fg = Functor::from_maps(
        &p0,
        &p1_orig.source,
        |o| {
            let (a, w) = split_pair_name(o).expect("pullback object");
            pair_name(a, m.map.apply_obj(w))
        },
        |mo| {
            let (a, w) = split_pair_name(mo).expect("pullback morphism");
            pair_name(a, m.map.apply_mor(w))
        },
    );
    let _ = p0_over;
    Ok(PulledBackArrow { slice: SliceMorphism::new(fg, p1_over)?, proj_dom: p0_orig, proj_cod: p1_orig })
}

/// One object of a pushforward: a base object together with a section of
/// `x` over its fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionPoint {
    pub base: String,
    pub section: Functor,
}

/// One morphism of a pushforward: a base morphism with a natural family of
/// lifts, indexed by the objects of the source fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportFamily {
    pub base_mor: String,
    pub src: String,
    pub tgt: String,
    pub components: BTreeMap<String, String>,
}

/// The pushforward `f_* x` as a finite category over the base, with full
/// section/family metadata for evaluation and transposition.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub total: FinCategory,
    pub projection: Functor,
    pub sections: BTreeMap<String, SectionPoint>,
    pub families: BTreeMap<String, TransportFamily>,
    index: BTreeMap<(String, String, String, Vec<(String, String)>), String>,
}

impl Pushforward {
    pub fn section_name(&self, b: &str, section: &Functor) -> Option<&str> {
        self.sections
            .iter()
            .find(|(_, sp)| sp.base == b && &sp.section == section)
            .map(|(n, _)| n.as_str())
    }

    pub fn family_name(
        &self,
        base_mor: &str,
        src: &str,
        tgt: &str,
        components: &BTreeMap<String, String>,
    ) -> Option<&str> {
        let key = (
            base_mor.to_string(),
            src.to_string(),
            tgt.to_string(),
            components.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>(),
        );
        self.index.get(&key).map(|s| s.as_str())
    }

    /// Evaluate a section object at a fiber object of the base.
    pub fn eval(&self, section_obj: &str, a: &str) -> &str {
        self.sections[section_obj].section.apply_obj(a)
    }

    /// The per-base-object view of the construction, with the transports
    /// induced on section sets by each outgoing base morphism (present when
    /// the projection carries a cleavage).
    pub fn section_groupoid(&self, b: &str, cleavage: Option<&SplitFibration>) -> SectionGroupoid {
        let sections: Vec<(String, Functor)> = self
            .sections
            .iter()
            .filter(|(_, sp)| sp.base == b)
            .map(|(n, sp)| (n.clone(), sp.section.clone()))
            .collect();
        let mut transports = BTreeMap::new();
        if let Some(fib) = cleavage {
            for m in self.projection.target.morphisms_from(b) {
                let mut table = BTreeMap::new();
                for (n, _) in &sections {
                    let lifted = fib.lift(n, &m.name);
                    table.insert(n.clone(), fib.total().cod(lifted).to_string());
                }
                transports.insert(m.name.clone(), table);
            }
        }
        SectionGroupoid { base_object: b.to_string(), sections, transports }
    }
}

/// Sections over one base object with their transports along outgoing base
/// morphisms. Transport respects the splitting: the `(b'.b)`-transport is
/// the composite of the two.
#[derive(Debug, Clone)]
pub struct SectionGroupoid {
    pub base_object: String,
    pub sections: Vec<(String, Functor)>,
    pub transports: BTreeMap<String, BTreeMap<String, String>>,
}

fn require_groupoid(c: &FinCategory, what: &str) -> Result<()> {
    if !c.is_groupoid() {
        return Err(Error::NotAGroupoid(format!("{what} must be a groupoid")));
    }
    Ok(())
}

fn cocartesian(f: &SplitFibration) -> Result<SplitFibration> {
    match f.orientation {
        Orientation::Cocartesian => Ok(f.clone()),
        Orientation::Cartesian => fibration_opfibration_convert(f),
    }
}

/// The section groupoid `f_* x` of an arbitrary `x : X -> A` over the base
/// of `f`, together with its projection. For each `b`, objects are pairs
/// `(b, s)` with `s` a section of `x` over the fiber `A_b`; morphisms over
/// `beta` are natural families lying over the cocartesian lifts.
///
/// The projection is a split fibration only when `x` itself carries one; use
/// [`pushforward_fibration`] for that.
pub fn pushforward_object(f: &SplitFibration, x: &Functor) -> Result<Pushforward> {
    if x.target != *f.total() {
        return Err(Error::BoundaryMismatch("pushforward_object: x does not land in the total of f".into()));
    }
    require_groupoid(f.total(), "total of f")?;
    require_groupoid(f.base(), "base of f")?;
    require_groupoid(&x.source, "domain of x")?;
    let ff = cocartesian(f)?;
    let _a_cat = ff.total();
    let b_cat = ff.base().clone();

    // Sections per base object, in the deterministic search order.
    let mut names: Vec<String> = Vec::new();
    let mut sections: BTreeMap<String, SectionPoint> = BTreeMap::new();
    let mut fibers: BTreeMap<String, (FinCategory, Functor)> = BTreeMap::new();
    for b in &b_cat.objects {
        let (fib, incl) = fiber_of(&ff.functor, b);
        let secs = enumerate_functors_over(&incl, x)?;
        for (k, s) in secs.into_iter().enumerate() {
            let name = format!("s{k}@{b}");
            names.push(name.clone());
            sections.insert(name, SectionPoint { base: b.clone(), section: s });
        }
        fibers.insert(b.clone(), (fib, incl));
    }

    // Families per base morphism and section pair.
    let mut raw: Vec<TransportFamily> = Vec::new();
    for beta in &b_cat.morphisms {
        let (fib_src, _) = &fibers[&beta.dom];
        for (sn, sp) in sections.iter().filter(|(_, sp)| sp.base == beta.dom) {
            for (tn, tp) in sections.iter().filter(|(_, tp)| tp.base == beta.cod) {
                // candidate components per fiber object
                let mut per_obj: Vec<(String, Vec<String>)> = Vec::new();
                for a in &fib_src.objects {
                    let lift = ff.lift(a, &beta.name);
                    let target_obj = tp.section.apply_obj(ff.total().cod(lift));
                    let cands: Vec<String> = x
                        .source
                        .hom(sp.section.apply_obj(a), target_obj)
                        .into_iter()
                        .filter(|m| x.apply_mor(&m.name) == lift)
                        .map(|m| m.name.clone())
                        .collect();
                    per_obj.push((a.clone(), cands));
                }
                // cartesian product with naturality filtering
                let mut partial: Vec<BTreeMap<String, String>> = alloc::vec![BTreeMap::new()];
                for (a, cands) in &per_obj {
                    let mut next = Vec::new();
                    for p in &partial {
                        for c in cands {
                            let mut q = p.clone();
                            q.insert(a.clone(), c.clone());
                            next.push(q);
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                'family: for comp in partial {
                    for v in &fib_src.morphisms {
                        let tv = ff.transport_fiber_mor(&v.name, &beta.name)?;
                        let lhs = x.source.try_compose(&comp[&v.cod], sp.section.apply_mor(&v.name));
                        let rhs = x.source.try_compose(tp.section.apply_mor(&tv), &comp[&v.dom]);
                        if lhs != rhs || lhs.is_none() {
                            continue 'family;
                        }
                    }
                    raw.push(TransportFamily {
                        base_mor: beta.name.clone(),
                        src: sn.clone(),
                        tgt: tn.clone(),
                        components: comp,
                    });
                }
            }
        }
    }
    raw.sort_by(|a, b| {
        (&a.base_mor, &a.src, &a.tgt, a.components.iter().collect::<Vec<_>>())
            .cmp(&(&b.base_mor, &b.src, &b.tgt, b.components.iter().collect::<Vec<_>>()))
    });

    let mut families: BTreeMap<String, TransportFamily> = BTreeMap::new();
    let mut index: BTreeMap<(String, String, String, Vec<(String, String)>), String> = BTreeMap::new();
    let mut morphisms: Vec<Morphism> = Vec::new();
    for (i, fam) in raw.into_iter().enumerate() {
        let name = format!("t{i}");
        index.insert(
            (
                fam.base_mor.clone(),
                fam.src.clone(),
                fam.tgt.clone(),
                fam.components.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            ),
            name.clone(),
        );
        morphisms.push(Morphism::new(name.clone(), fam.src.clone(), fam.tgt.clone()));
        families.insert(name, fam);
    }

    // identities
    let mut identities = BTreeMap::new();
    for (sn, sp) in &sections {
        let idb = b_cat.identity(&sp.base).to_string();
        let comp: BTreeMap<String, String> = fibers[&sp.base]
            .0
            .objects
            .iter()
            .map(|a| (a.clone(), x.source.identity(sp.section.apply_obj(a)).to_string()))
            .collect();
        let key = (idb, sn.clone(), sn.clone(), comp.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>());
        let name = index
            .get(&key)
            .ok_or_else(|| Error::MalformedCleavage(format!("identity family missing for {sn}")))?;
        identities.insert(sn.clone(), name.clone());
    }

    // composition: componentwise with transport of the index
    let mut composition = BTreeMap::new();
    let fam_list: Vec<(String, TransportFamily)> = families.iter().map(|(n, f)| (n.clone(), f.clone())).collect();
    for (n2, f2) in &fam_list {
        for (n1, f1) in &fam_list {
            if f1.tgt != f2.src {
                continue;
            }
            let beta = b_cat.compose(&f2.base_mor, &f1.base_mor).to_string();
            let src_fiber = &fibers[&sections[&f1.src].base].0;
            let mut comp = BTreeMap::new();
            for a in &src_fiber.objects {
                let mid = ff.transport_obj(a, &f1.base_mor).to_string();
                comp.insert(a.clone(), x.source.compose(&f2.components[&mid], &f1.components[a]).to_string());
            }
            let key = (
                beta,
                f1.src.clone(),
                f2.tgt.clone(),
                comp.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>(),
            );
            let name = index
                .get(&key)
                .ok_or_else(|| Error::MalformedCleavage("composite family missing from enumeration".into()))?;
            composition.insert((n2.clone(), n1.clone()), name.clone());
        }
    }

    // inverses: componentwise inverses re-indexed along the inverse transport
    let mut inverses = BTreeMap::new();
    for (n, fam) in &families {
        let beta_inv = b_cat.inverse(&fam.base_mor).to_string();
        let tgt_fiber = &fibers[&sections[&fam.tgt].base].0;
        let mut comp = BTreeMap::new();
        for a2 in &tgt_fiber.objects {
            let a = ff.transport_obj(a2, &beta_inv).to_string();
            comp.insert(a2.clone(), x.source.inverse(&fam.components[&a]).to_string());
        }
        let key = (
            beta_inv,
            fam.tgt.clone(),
            fam.src.clone(),
            comp.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>(),
        );
        let name = index
            .get(&key)
            .ok_or_else(|| Error::MalformedCleavage("inverse family missing from enumeration".into()))?;
        inverses.insert(n.clone(), name.clone());
    }

    let total = FinCategory::new(names, morphisms, identities, composition, Some(inverses));
    total.check_tables()?;
    let projection = Functor::new(
        total.clone(),
        b_cat.clone(),
        sections.iter().map(|(n, sp)| (n.clone(), sp.base.clone())).collect(),
        families.iter().map(|(n, f)| (n.clone(), f.base_mor.clone())).collect(),
    );
    Ok(Pushforward { total, projection, sections, families, index })
}

/// The section obtained by conjugating `section` along a family of
/// morphisms lying over the chosen lifts of `beta`: on objects the
/// pointwise codomain, on fiber morphisms `comp . s(v) . comp⁻¹` reindexed
/// along the fiber transport.
pub fn conjugate_section(
    ff: &SplitFibration,
    ambient: &FinCategory,
    section: &Functor,
    beta: &str,
    components: &BTreeMap<String, String>,
) -> Result<Functor> {
    let src_fiber = &section.source;
    let (tgt_fiber, _) = fiber_of(&ff.functor, ff.base().cod(beta));
    let mut object_map = BTreeMap::new();
    for a in &src_fiber.objects {
        let a2 = ff.transport_obj(a, beta).to_string();
        object_map.insert(a2, ambient.cod(&components[a]).to_string());
    }
    let mut morphism_map = BTreeMap::new();
    for v in &src_fiber.morphisms {
        let v2 = ff.transport_fiber_mor(&v.name, beta)?;
        let conj = ambient.compose_chain(&[
            &components[&v.cod],
            section.apply_mor(&v.name),
            ambient.inverse(&components[&v.dom]),
        ]);
        morphism_map.insert(v2, conj);
    }
    Ok(Functor::new(tgt_fiber, ambient.clone(), object_map, morphism_map))
}

/// The pushforward of a split fibration `x` over the total of `f`: the
/// section groupoid with the transport cleavage
/// `s |-> beta_! . s . (beta⁻¹)_!`, whose chosen lifts are the families of
/// chosen `x`-lifts.
pub fn pushforward_fibration(f: &SplitFibration, x: &SplitFibration) -> Result<(Pushforward, SplitFibration)> {
    if x.base() != f.total() {
        return Err(Error::BoundaryMismatch("pushforward_fibration: x is not over the total of f".into()));
    }
    let ff = cocartesian(f)?;
    let xx = cocartesian(x)?;
    let pf = pushforward_object(&ff, &xx.functor)?;
    let b_cat = ff.base().clone();
    let mut cleavage = BTreeMap::new();
    for (sn, sp) in &pf.sections {
        let (fib_src, _) = fiber_of(&ff.functor, &sp.base);
        for beta in b_cat.morphisms_from(&sp.base) {
            let mut comp = BTreeMap::new();
            for a in &fib_src.objects {
                let a_lift = ff.lift(a, &beta.name).to_string();
                comp.insert(a.clone(), xx.lift(sp.section.apply_obj(a), &a_lift).to_string());
            }
            let tgt_section = conjugate_section(&ff, xx.total(), &sp.section, &beta.name, &comp)?;
            let tgt = pf
                .section_name(&beta.cod, &tgt_section)
                .ok_or_else(|| Error::MalformedCleavage("transported section missing".into()))?
                .to_string();
            let name = pf
                .family_name(&beta.name, sn, &tgt, &comp)
                .ok_or_else(|| Error::MalformedCleavage("cleavage family missing from enumeration".into()))?;
            cleavage.insert((sn.clone(), beta.name.clone()), name.to_string());
        }
    }
    let fib = SplitFibration { functor: pf.projection.clone(), orientation: Orientation::Cocartesian, cleavage };
    Ok((pf, fib))
}

/// The arrow-level pushforward `f_*(q, a) = (f_* q, f_* a)`: post-composition
/// with `q` on section groupoids.
pub fn pushforward_arrows(f: &SplitFibration, m: &SliceMorphism) -> Result<(SliceMorphism, Pushforward, Pushforward)> {
    if m.base() != f.total() {
        return Err(Error::BoundaryMismatch("pushforward_arrows: slice is not over the total of f".into()));
    }
    let dom_obj = m.dom_object();
    let pf_dom = pushforward_object(f, &dom_obj)?;
    let pf_cod = pushforward_object(f, &m.extension)?;
    let map = induced_pushforward_map(&pf_dom, &pf_cod, &m.map)?;
    Ok((SliceMorphism::new(map, pf_cod.projection.clone())?, pf_dom, pf_cod))
}

/// The functor `f_* t : f_* x1 -> f_* x2` induced by a map `t` over the
/// total of `f` (post-composition of sections and families).
pub fn induced_pushforward_map(pf_dom: &Pushforward, pf_cod: &Pushforward, t: &Functor) -> Result<Functor> {
    let mut object_map = BTreeMap::new();
    for (sn, sp) in &pf_dom.sections {
        let pushed = compose_functors(t, &sp.section)?;
        let name = pf_cod
            .section_name(&sp.base, &pushed)
            .ok_or_else(|| Error::MalformedCleavage(format!("pushed section of {sn} missing")))?;
        object_map.insert(sn.clone(), name.to_string());
    }
    let mut morphism_map = BTreeMap::new();
    for (fname, fam) in &pf_dom.families {
        let comp: BTreeMap<String, String> =
            fam.components.iter().map(|(a, c)| (a.clone(), t.apply_mor(c).to_string())).collect();
        let name = pf_cod
            .family_name(&fam.base_mor, &object_map[&fam.src], &object_map[&fam.tgt], &comp)
            .ok_or_else(|| Error::MalformedCleavage(format!("pushed family of {fname} missing")))?;
        morphism_map.insert(fname.clone(), name.to_string());
    }
    Ok(Functor::new(pf_dom.total.clone(), pf_cod.total.clone(), object_map, morphism_map))
}

/// The pullback `f^* t` of an object `t : T -> B` along `f : A -> B`,
/// wrapped with both projections.
#[derive(Debug, Clone)]
pub struct PulledObject {
    pub total: FinCategory,
    /// Projection to the source of `f`: the object `f^* t` of the slice.
    pub over: Functor,
    /// Projection to the original total `T`.
    pub to_orig: Functor,
}

pub fn pullback_object(f: &Functor, t: &Functor) -> Result<PulledObject> {
    let (total, over, to_orig) = pullback_category(f, t)?;
    Ok(PulledObject { total, over, to_orig })
}

/// The functor `f^* phi` induced on pullback totals by a map `phi` over `B`.
pub fn pulled_back_map(dom: &PulledObject, cod: &PulledObject, phi: &Functor) -> Functor {
    Functor::from_maps(
        &dom.total,
        &cod.total,
        |o| {
            let (a, w) = split_pair_name(o).expect("pullback object");
            pair_name(a, phi.apply_obj(w))
        },
        |m| {
            let (a, w) = split_pair_name(m).expect("pullback morphism");
            pair_name(a, phi.apply_mor(w))
        },
    )
}

/// The unit `nu_t : t -> f_* f^* t` of `f^* ⊣ f_*` at `t : T -> B`.
pub fn slice_unit(f: &SplitFibration, t: &Functor) -> Result<(PulledObject, Pushforward, Functor)> {
    let ff = cocartesian(f)?;
    let pulled = pullback_object(&ff.functor, t)?;
    let pf = pushforward_object(&ff, &pulled.over)?;
    let mut object_map = BTreeMap::new();
    let mut morphism_map = BTreeMap::new();
    for w in &t.source.objects {
        let b = t.apply_obj(w).to_string();
        let (fib, _) = fiber_of(&ff.functor, &b);
        // section a |-> (a, w)
        let section = Functor::from_maps(&fib, &pulled.total, |a| pair_name(a, w), |m| {
            pair_name(m, t.source.identity(w))
        });
        let name = pf
            .section_name(&b, &section)
            .ok_or_else(|| Error::MalformedCleavage(format!("unit section at {w} missing")))?;
        object_map.insert(w.clone(), name.to_string());
    }
    for psi in &t.source.morphisms {
        let beta = t.apply_mor(&psi.name).to_string();
        let (fib, _) = fiber_of(&ff.functor, ff.base().dom(&beta));
        let mut comp = BTreeMap::new();
        for a in &fib.objects {
            comp.insert(a.clone(), pair_name(ff.lift(a, &beta), &psi.name));
        }
        let name = pf
            .family_name(&beta, &object_map[&psi.dom], &object_map[&psi.cod], &comp)
            .ok_or_else(|| Error::MalformedCleavage(format!("unit family at {} missing", psi.name)))?;
        morphism_map.insert(psi.name.clone(), name.to_string());
    }
    let nu = Functor::new(t.source.clone(), pf.total.clone(), object_map, morphism_map);
    Ok((pulled, pf, nu))
}

/// The counit `eps_x : f^* f_* x -> x` of `f^* ⊣ f_*` at `x : X -> A`:
/// evaluation of sections.
pub fn slice_counit(
    f: &SplitFibration,
    x: &Functor,
    pf: &Pushforward,
    pulled: &PulledObject,
) -> Result<Functor> {
    let ff = cocartesian(f)?;
    let a_cat = ff.total();
    let mut object_map = BTreeMap::new();
    let mut morphism_map = BTreeMap::new();
    for o in &pulled.total.objects {
        let (a, sname) = split_pair_name(o).expect("pullback object");
        object_map.insert(o.clone(), pf.eval(sname, a).to_string());
    }
    for mo in &pulled.total.morphisms {
        let (m, fname) = split_pair_name(&mo.name).expect("pullback morphism");
        let fam = &pf.families[fname];
        let (a, _) = split_pair_name(&mo.dom).expect("pullback object");
        // decompose m = v' . lift(a, beta) with v' vertical
        let lift = ff.lift(a, &fam.base_mor).to_string();
        let vprime = a_cat.compose(m, a_cat.inverse(&lift)).to_string();
        let tgt_section = &pf.sections[&fam.tgt].section;
        let img = x.source.compose(tgt_section.apply_mor(&vprime), &fam.components[a]).to_string();
        morphism_map.insert(mo.name.clone(), img);
    }
    Ok(Functor::new(pulled.total.clone(), x.source.clone(), object_map, morphism_map))
}

/// Transpose `t : f^* y -> x` (over `A`) to `y -> f_* x` (over `B`).
pub fn transpose_over_to(
    f: &SplitFibration,
    y: &Functor,
    pulled_y: &PulledObject,
    pf_x: &Pushforward,
    t: &Functor,
) -> Result<Functor> {
    let ff = cocartesian(f)?;
    let mut object_map = BTreeMap::new();
    let mut morphism_map = BTreeMap::new();
    for w in &y.source.objects {
        let b = y.apply_obj(w).to_string();
        let (fib, _) = fiber_of(&ff.functor, &b);
        let idw = y.source.identity(w).to_string();
        let section = Functor::from_maps(&fib, &t.target, |a| t.apply_obj(&pair_name(a, w)).to_string(), |m| {
            t.apply_mor(&pair_name(m, &idw)).to_string()
        });
        let name = pf_x
            .section_name(&b, &section)
            .ok_or_else(|| Error::MalformedCleavage(format!("transposed section at {w} missing")))?;
        object_map.insert(w.clone(), name.to_string());
    }
    for psi in &y.source.morphisms {
        let beta = y.apply_mor(&psi.name).to_string();
        let (fib, _) = fiber_of(&ff.functor, ff.base().dom(&beta));
        let mut comp = BTreeMap::new();
        for a in &fib.objects {
            comp.insert(a.clone(), t.apply_mor(&pair_name(ff.lift(a, &beta), &psi.name)).to_string());
        }
        let name = pf_x
            .family_name(&beta, &object_map[&psi.dom], &object_map[&psi.cod], &comp)
            .ok_or_else(|| Error::MalformedCleavage(format!("transposed family at {} missing", psi.name)))?;
        morphism_map.insert(psi.name.clone(), name.to_string());
    }
    let _ = pulled_y;
    Ok(Functor::new(y.source.clone(), pf_x.total.clone(), object_map, morphism_map))
}

/// Transpose `r : y -> f_* x` (over `B`) to `f^* y -> x` (over `A`):
/// `eps_x . f^*(r)`.
pub fn transpose_over_back(
    f: &SplitFibration,
    x: &Functor,
    pulled_y: &PulledObject,
    pf_x: &Pushforward,
    pulled_pfx: &PulledObject,
    r: &Functor,
) -> Result<Functor> {
    let fr = pulled_back_map(pulled_y, pulled_pfx, r);
    let eps = slice_counit(f, x, pf_x, pulled_pfx)?;
    compose_functors(&eps, &fr)
}

/// Everything `adjunction_check` certifies for one corpus pair.
#[derive(Debug, Clone)]
pub struct AdjunctionCase {
    pub unit: Functor,
    pub counit: Functor,
    pub hom_over_a: usize,
    pub hom_over_b: usize,
}

/// Certify `f^* ⊣ f_*` on a corpus of slice objects: units, counits,
/// triangle identities, and for every pair `(y over B, x over A)` the
/// mutually inverse transposition maps between the enumerated hom-sets.
/// Violations are reported, not thrown.
pub fn adjunction_check(
    f: &SplitFibration,
    corpus: &[(Functor, Functor)],
) -> Result<(Vec<AdjunctionCase>, ValidationReport)> {
    let ff = cocartesian(f)?;
    let mut rep = ValidationReport::new();
    let mut cases = Vec::new();
    for (i, (y, x)) in corpus.iter().enumerate() {
        let scope = format!("case {i}");
        if y.target != *ff.base() || x.target != *ff.total() {
            rep.push("adjunction.case", format!("{scope}: wrong bases"));
            continue;
        }
        let (pulled_y, pf_fy, nu_y) = slice_unit(&ff, y)?;
        if !nu_y.validate()?.ok() {
            rep.push("adjunction.unit_functor", format!("{scope}: nu_y not a functor"));
        }
        if compose_functors(&pf_fy.projection, &nu_y)? != *y {
            rep.push("adjunction.unit_over", format!("{scope}: nu_y is not over B"));
        }
        let pf_x = pushforward_object(&ff, x)?;
        let pulled_pfx = pullback_object(&ff.functor, &pf_x.projection)?;
        let eps_x = slice_counit(&ff, x, &pf_x, &pulled_pfx)?;
        if !eps_x.validate()?.ok() {
            rep.push("adjunction.counit_functor", format!("{scope}: eps_x not a functor"));
        }
        if compose_functors(x, &eps_x)? != pulled_pfx.over {
            rep.push("adjunction.counit_over", format!("{scope}: eps_x is not over A"));
        }

        // triangle 1: eps_{f* y} . f*(nu_y) = 1 on f* y
        let pulled_pf_fy = pullback_object(&ff.functor, &pf_fy.projection)?;
        let f_nu = pulled_back_map(&pulled_y, &pulled_pf_fy, &nu_y);
        let eps_fy = slice_counit(&ff, &pulled_y.over, &pf_fy, &pulled_pf_fy)?;
        if compose_functors(&eps_fy, &f_nu)? != Functor::identity(&pulled_y.total) {
            rep.push("adjunction.triangle1", format!("{scope}: eps.f*(nu) != 1"));
        }

        // triangle 2: f_*(eps_x) . nu_{f_* x} = 1 on f_* x
        let (_, pf_ffx, nu_pfx) = slice_unit(&ff, &pf_x.projection)?;
        let f_eps = induced_pushforward_map(&pf_ffx, &pf_x, &eps_x)?;
        if compose_functors(&f_eps, &nu_pfx)? != Functor::identity(&pf_x.total) {
            rep.push("adjunction.triangle2", format!("{scope}: f_*(eps).nu != 1"));
        }

        // hom-set bijection by explicit transposition
        let hom_a = enumerate_functors_over(&pulled_y.over, x)?;
        let hom_b = enumerate_functors_over(y, &pf_x.projection)?;
        if hom_a.len() != hom_b.len() {
            rep.push(
                "adjunction.hom_cardinality",
                format!("{scope}: |Hom_A(f*y, x)| = {} != |Hom_B(y, f_*x)| = {}", hom_a.len(), hom_b.len()),
            );
        }
        for t in &hom_a {
            let r = transpose_over_to(&ff, y, &pulled_y, &pf_x, t)?;
            if !hom_b.contains(&r) {
                rep.push("adjunction.transpose_to", format!("{scope}: transpose leaves the hom-set"));
                continue;
            }
            let back = transpose_over_back(&ff, x, &pulled_y, &pf_x, &pulled_pfx, &r)?;
            if back != *t {
                rep.push("adjunction.round_trip_a", format!("{scope}: transpose round trip != id"));
            }
        }
        for r in &hom_b {
            let t = transpose_over_back(&ff, x, &pulled_y, &pf_x, &pulled_pfx, r)?;
            if !hom_a.contains(&t) {
                rep.push("adjunction.transpose_back", format!("{scope}: transpose leaves the hom-set"));
                continue;
            }
            let round = transpose_over_to(&ff, y, &pulled_y, &pf_x, &t)?;
            if round != *r {
                rep.push("adjunction.round_trip_b", format!("{scope}: transpose round trip != id"));
            }
        }
        cases.push(AdjunctionCase { unit: nu_y, counit: eps_x, hom_over_a: hom_a.len(), hom_over_b: hom_b.len() });
    }
    Ok((cases, rep))
}

/// Whether a commuting square is a strict pullback: the canonical comparison
/// into the table-level pullback is bijective.
pub fn is_pullback_square(sq: &Square) -> Result<bool> {
    let (_, _, _) = (&sq.left, &sq.right, &sq.top);
    let (pb, _, _) = pullback_category(&sq.bottom, &sq.right.clone())?;
    // comparison: dom(left) -> pb, z |-> (left z, top z)
    let comp = Functor::from_maps(&sq.left.source, &pb, |o| pair_name(sq.left.apply_obj(o), sq.top.apply_obj(o)), |m| {
        pair_name(sq.left.apply_mor(m), sq.top.apply_mor(m))
    });
    for (_, v) in &comp.object_map {
        if !pb.has_object(v) {
            return Ok(false);
        }
    }
    for (_, v) in &comp.morphism_map {
        if pb.morphism(v).is_none() {
            return Ok(false);
        }
    }
    Ok(comp.is_bijective())
}

/// The component of the canonical mate `alpha : u_! f^* => g^* v_!` at a
/// slice morphism `(w, b)` over `B`, for a commuting square
/// `(u, v) : f -> g`.
#[derive(Debug, Clone)]
pub struct MateAlpha {
    /// `(alpha_{b.w}, alpha_b) : u_! f^*(w, b) -> g^* v_!(w, b)`.
    pub square: Square,
    pub lhs: SliceMorphism,
    pub rhs: SliceMorphism,
}

pub fn mate_alpha(sq: &Square, m: &SliceMorphism) -> Result<MateAlpha> {
    if m.base() != &sq.left.target {
        return Err(Error::BoundaryMismatch("mate_alpha: slice base != target of f".into()));
    }
    let (f, g, u, v) = (&sq.left, &sq.right, &sq.top, &sq.bottom);
    // u_! f^*(w, b): pull back along f, extend with u
    let pulled_f = pullback_arrows(f, m)?;
    let lhs = SliceMorphism::new(pulled_f.slice.map.clone(), compose_functors(u, &pulled_f.slice.extension)?)?;
    // g^* v_!(w, b): extend with v, pull back along g
    let vb = SliceMorphism::new(m.map.clone(), compose_functors(v, &m.extension)?)?;
    let pulled_g = pullback_arrows(g, &vb)?;
    let rhs = pulled_g.slice.clone();
    // components (a, omega) |-> (u a, omega)
    let alpha_on = |dom: &FinCategory, cod: &FinCategory| -> Functor {
        Functor::from_maps(
            dom,
            cod,
            |o| {
                let (a, w) = split_pair_name(o).expect("pullback object");
                pair_name(u.apply_obj(a), w)
            },
            |mo| {
                let (a, w) = split_pair_name(mo).expect("pullback morphism");
                pair_name(u.apply_mor(a), w)
            },
        )
    };
    let top = alpha_on(&lhs.map.source, &rhs.map.source);
    let bottom = alpha_on(&lhs.map.target, &rhs.map.target);
    let square = Square::new(lhs.map.clone(), rhs.map.clone(), top, bottom)?;
    Ok(MateAlpha { square, lhs, rhs })
}

/// The component of the Beck--Chevalley mate `beta : v^* g_* => f_* u^*` at
/// an object `z : Z -> C`, computed by pasting `alpha` with the units and
/// counits of the four composite adjunctions. Requires `(u, v) : f -> g` to
/// be a pullback square of split fibrations of groupoids.
#[derive(Debug, Clone)]
pub struct MateBeta {
    /// `beta_z : v^* g_* z -> f_* u^* z`, a map over `B`.
    pub component: Functor,
    /// Domain object `v^* g_* z` over `B`.
    pub dom: Functor,
    /// Codomain object `f_* u^* z` over `B`.
    pub cod: Functor,
}

/// Compute the object-level component `beta_z` two ways (whiskering orders)
/// and return it; the two routes are compared and a mismatch is an error.
pub fn mate_beta_component(
    sq: &Square,
    f_fib: &SplitFibration,
    g_fib: &SplitFibration,
    z: &Functor,
) -> Result<MateBeta> {
    if !is_pullback_square(sq)? {
        return Err(Error::NotAPullback("mate_beta: square is not a pullback".into()));
    }
    if sq.left != f_fib.functor || sq.right != g_fib.functor {
        return Err(Error::KindMismatch("mate_beta: fibration witnesses do not match the square".into()));
    }
    let (u, v) = (&sq.top, &sq.bottom);
    let ff = cocartesian(f_fib)?;
    let gg = cocartesian(g_fib)?;
    if z.target != *gg.total() {
        return Err(Error::BoundaryMismatch("mate_beta: z is not over the total of g".into()));
    }

    // R2 z = v^* (g_* z)
    let pf_gz = pushforward_object(&gg, z)?;
    let r2z = pullback_object(v, &pf_gz.projection)?;

    // eta1 at R2 z: t -> f_* f^* t -> f_* (u^* u_! f^* t)
    let t = &r2z.over;
    let (pulled_t, pf_ft, nu_t) = slice_unit(&ff, t)?;
    // u_! f^* t is the object u . pulled_t.over; u^* of it:
    let u_fstar_t = compose_functors(u, &pulled_t.over)?;
    let pulled_u = pullback_object(u, &u_fstar_t)?;
    // eta^u at f^* t: pulled_t.total -> pulled_u.total, xi |-> (over xi, xi)
    let eta_u = Functor::from_maps(&pulled_t.total, &pulled_u.total, |o| pair_name(pulled_t.over.apply_obj(o), o), |m| {
        pair_name(pulled_t.over.apply_mor(m), m)
    });
    let pf_uuft = pushforward_object(&ff, &pulled_u.over)?;
    let f_eta_u = induced_pushforward_map(&pf_ft, &pf_uuft, &eta_u)?;
    let eta1 = compose_functors(&f_eta_u, &nu_t)?;

    // alpha at R2 z, as a map u_! f^* t -> g^* v_! t over C; since
    // t = v^* g_* z, the target total is g^*(v_! v^* g_* z).
    let pulled_g_vt = pullback_object(&gg.functor, &compose_functors(v, t)?)?;
    let alpha_t = Functor::from_maps(
        &pulled_t.total,
        &pulled_g_vt.total,
        |o| {
            let (a, w) = split_pair_name(o).expect("pullback object");
            pair_name(u.apply_obj(a), w)
        },
        |m| {
            let (a, w) = split_pair_name(m).expect("pullback morphism");
            pair_name(u.apply_mor(a), w)
        },
    );

    // eps2 at z: g^* v_! (v^* g_* z) -> z, pasted from the counits of
    // v_! ⊣ v^* (a projection) and g^* ⊣ g_* (section evaluation).
    let eps_v = r2z.to_orig.clone();
    let pulled_g_pfgz = pullback_object(&gg.functor, &pf_gz.projection)?;
    let g_eps_v = pulled_back_map(&pulled_g_vt, &pulled_g_pfgz, &eps_v);
    let eps_g = slice_counit(&gg, z, &pf_gz, &pulled_g_pfgz)?;
    let eps2 = compose_functors(&eps_g, &g_eps_v)?;

    // Route 1: paste in C/C first, then apply R1 = f_* u^* once.
    let alpha_then_eps = compose_functors(&eps2, &alpha_t)?;
    let pulled_u_z = pullback_object(u, z)?;
    let u_paste = pulled_back_map(&pulled_u, &pulled_u_z, &alpha_then_eps);
    let pf_uz = pushforward_object(&ff, &pulled_u_z.over)?;
    let f_paste = induced_pushforward_map(&pf_uuft, &pf_uz, &u_paste)?;
    let beta_route1 = compose_functors(&f_paste, &eta1)?;

    // Route 2: apply R1 to each factor separately and compose in C/B.
    let pulled_u_gvt = pullback_object(u, &pulled_g_vt.over)?;
    let u_alpha = pulled_back_map(&pulled_u, &pulled_u_gvt, &alpha_t);
    let u_eps2 = pulled_back_map(&pulled_u_gvt, &pulled_u_z, &eps2);
    let pf_u_gvt = pushforward_object(&ff, &pulled_u_gvt.over)?;
    let f_u_alpha = induced_pushforward_map(&pf_uuft, &pf_u_gvt, &u_alpha)?;
    let f_u_eps2 = induced_pushforward_map(&pf_u_gvt, &pf_uz, &u_eps2)?;
    let beta_route2 = compose_functors(&f_u_eps2, &compose_functors(&f_u_alpha, &eta1)?)?;

    if beta_route1 != beta_route2 {
        return Err(Error::MalformedCleavage("mate_beta: pasting orders disagree".into()));
    }
    Ok(MateBeta { component: beta_route1, dom: r2z.over.clone(), cod: pf_uz.projection.clone() })
}

/// The arrow-level Beck--Chevalley component at a slice morphism
/// `(h, w)` over the total of `g`: the square
/// `(beta_{w.h}, beta_w) : v^* g_*(h, w) -> f_* u^*(h, w)`.
///
/// Both components are isomorphisms when the square is a pullback; the
/// square construction itself checks that they assemble into a morphism of
/// `C/B` arrows (naturality of `beta` at `(h, w)`).
pub fn mate_beta(
    sq: &Square,
    f_fib: &SplitFibration,
    g_fib: &SplitFibration,
    m: &SliceMorphism,
) -> Result<Square> {
    let (u, v) = (&sq.top, &sq.bottom);
    let ff = cocartesian(f_fib)?;
    let gg = cocartesian(g_fib)?;
    if m.base() != gg.total() {
        return Err(Error::BoundaryMismatch("mate_beta: slice is not over the total of g".into()));
    }
    // left leg: v^* g_*(h, w)
    let (g_pushed, g_pf_dom, g_pf_cod) = pushforward_arrows(&gg, m)?;
    let pulled_dom_l = pullback_object(v, &g_pf_dom.projection)?;
    let pulled_cod_l = pullback_object(v, &g_pf_cod.projection)?;
    let left_leg = pulled_back_map(&pulled_dom_l, &pulled_cod_l, &g_pushed.map);
    // right leg: f_* u^*(h, w)
    let u_pulled = pullback_arrows(u, m)?;
    let pf_dom_r = pushforward_object(&ff, &u_pulled.slice.dom_object())?;
    let pf_cod_r = pushforward_object(&ff, &u_pulled.slice.extension)?;
    let right_leg = induced_pushforward_map(&pf_dom_r, &pf_cod_r, &u_pulled.slice.map)?;
    // components of beta at the two objects of the slice arrow
    let beta_cod = mate_beta_component(sq, f_fib, g_fib, &m.extension)?;
    let beta_dom = mate_beta_component(sq, f_fib, g_fib, &m.dom_object())?;
    Square::new(left_leg, right_leg, beta_dom.component, beta_cod.component)
}

/// Naturality of `alpha` in `(w, b)`: for a connecting pair
/// `(p, q) : (w, b) -> (w~, b~)` in the arrow category of `C/B`, the two
/// pasted squares agree. Violations are reported.
pub fn mate_alpha_naturality_check(
    sq: &Square,
    m1: &SliceMorphism,
    m2: &SliceMorphism,
    p: &Functor,
    q: &Functor,
) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    // (p, q) must commute with the slice structure
    let w2p = compose_functors(&m2.map, p)?;
    let qw1 = compose_functors(q, &m1.map)?;
    if w2p != qw1 {
        return Err(Error::BoundaryMismatch("mate_alpha naturality: (p, q) is not a square".into()));
    }
    if compose_functors(&m2.extension, q)? != m1.extension {
        return Err(Error::ExtensionMismatch("mate_alpha naturality: q is not over B".into()));
    }
    let a1 = mate_alpha(sq, m1)?;
    let a2 = mate_alpha(sq, m2)?;
    let (f, g) = (&sq.left, &sq.right);
    // induced maps on pullback totals
    let fp = {
        let dom = pullback_object(f, &m1.dom_object())?;
        let cod = pullback_object(f, &m2.dom_object())?;
        pulled_back_map(&dom, &cod, p)
    };
    let fq = {
        let dom = pullback_object(f, &m1.extension)?;
        let cod = pullback_object(f, &m2.extension)?;
        pulled_back_map(&dom, &cod, q)
    };
    let gp = {
        let dom = pullback_object(g, &compose_functors(&sq.bottom, &m1.dom_object())?)?;
        let cod = pullback_object(g, &compose_functors(&sq.bottom, &m2.dom_object())?)?;
        pulled_back_map(&dom, &cod, p)
    };
    let gq = {
        let dom = pullback_object(g, &compose_functors(&sq.bottom, &m1.extension)?)?;
        let cod = pullback_object(g, &compose_functors(&sq.bottom, &m2.extension)?)?;
        pulled_back_map(&dom, &cod, q)
    };
    if compose_functors(&a2.square.top, &fp)? != compose_functors(&gp, &a1.square.top)? {
        rep.push("alpha.naturality_dom", "top components do not commute");
    }
    if compose_functors(&a2.square.bottom, &fq)? != compose_functors(&gq, &a1.square.bottom)? {
        rep.push("alpha.naturality_cod", "bottom components do not commute");
    }
    Ok(rep)
}

/// Materialise the full finite subcategory of `Gpd/base` on the listed
/// objects. Morphism `h{i}_{j}_{k}` is the `k`-th functor-over from object
/// `i` to object `j` in the deterministic search order. Returns the
/// category plus the interpretation of each morphism name.
pub fn materialize_slice_category(
    base: &FinCategory,
    objects: &[(String, Functor)],
) -> Result<(FinCategory, BTreeMap<String, Functor>)> {
    for (_, o) in objects {
        if o.target != *base {
            return Err(Error::BoundaryMismatch("materialize_slice_category: object not over the base".into()));
        }
    }
    let mut morphisms = Vec::new();
    let mut table: BTreeMap<String, Functor> = BTreeMap::new();
    let mut homs: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for (ni, oi) in objects {
        for (nj, oj) in objects {
            let fs = enumerate_functors_over(oi, oj)?;
            let mut names = Vec::new();
            for (k, h) in fs.into_iter().enumerate() {
                let name = format!("h{ni}_{nj}_{k}");
                morphisms.push(Morphism::new(name.clone(), ni.clone(), nj.clone()));
                table.insert(name.clone(), h);
                names.push(name);
            }
            homs.insert((ni.clone(), nj.clone()), names);
        }
    }
    let mut identities = BTreeMap::new();
    for (ni, oi) in objects {
        let id = Functor::identity(&oi.source);
        let name = homs[&(ni.clone(), ni.clone())]
            .iter()
            .find(|n| table[*n] == id)
            .ok_or_else(|| Error::MalformedTable("identity functor missing from hom enumeration".into()))?;
        identities.insert(ni.clone(), name.clone());
    }
    let mut composition = BTreeMap::new();
    let records = morphisms.clone();
    for m2 in &records {
        for m1 in &records {
            if m1.cod != m2.dom {
                continue;
            }
            let comp = compose_functors(&table[&m2.name], &table[&m1.name])?;
            let name = homs[&(m1.dom.clone(), m2.cod.clone())]
                .iter()
                .find(|n| table[*n] == comp)
                .ok_or_else(|| Error::MalformedTable("composite functor missing from hom enumeration".into()))?;
            composition.insert((m2.name.clone(), m1.name.clone()), name.clone());
        }
    }
    let cat = FinCategory::new(
        objects.iter().map(|(n, _)| n.clone()).collect(),
        morphisms,
        identities,
        composition,
        None,
    );
    cat.check_tables()?;
    Ok((cat, table))
}
