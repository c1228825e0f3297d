//! The groupoid model of dependent type theory: contexts are finite
//! groupoids, types are split fibrations (cartesian orientation), terms are
//! sections. Sigma is composition of fibrations, Pi is pushforward along the
//! context extension, and Id is the path object of vertical morphisms, with
//! the J eliminator given by the canonical lifting operation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cat::{compose_functors, pair_name, split_pair_name, FinCategory, Functor, Morphism, NatTransformation};
use crate::error::{Error, Result};
use crate::frobenius::beck_chevalley_check;
use crate::report::ValidationReport;
use crate::squares::Square;
use crate::structured::{
    adjoin_retract, check_structured_square, compose_split_fibrations, fibration_opfibration_convert,
    pullback_split_fibration, Orientation, SplitFibration, SplitReflection, StructuredSquare,
};
use crate::transport::{is_pullback_square, pushforward_fibration, Pushforward};

/// A context: a finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub groupoid: FinCategory,
}

impl Context {
    pub fn new(groupoid: FinCategory) -> Result<Self> {
        if !groupoid.is_groupoid() {
            return Err(Error::NotAGroupoid("context must be a groupoid".into()));
        }
        Ok(Context { groupoid })
    }
}

/// A type over a context: a cartesian split fibration of groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOver {
    pub fibration: SplitFibration,
}

impl TypeOver {
    pub fn new(fibration: SplitFibration) -> Result<Self> {
        if fibration.orientation != Orientation::Cartesian {
            return Err(Error::OrientationMismatch("types are cartesian split fibrations".into()));
        }
        if !fibration.total().is_groupoid() || !fibration.base().is_groupoid() {
            return Err(Error::NotAGroupoid("types live over groupoids".into()));
        }
        Ok(TypeOver { fibration })
    }

    pub fn context(&self) -> &FinCategory {
        self.fibration.base()
    }

    pub fn total(&self) -> &FinCategory {
        self.fibration.total()
    }
}

/// A term of a type: a section of its fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOf {
    pub section: Functor,
}

impl TermOf {
    pub fn new(ty: &TypeOver, section: Functor) -> Result<Self> {
        if compose_functors(&ty.fibration.functor, &section)? != Functor::identity(ty.context()) {
            return Err(Error::JudgmentMismatch("term: fibration.section != 1".into()));
        }
        Ok(TermOf { section })
    }
}

/// Substitution `sigma^* T` by table-level pullback, with the projection to
/// the original total. The identity substitution is normalised to return
/// the type unchanged.
pub fn substitute_with_projection(sigma: &Functor, t: &TypeOver) -> Result<(TypeOver, Functor)> {
    if sigma.target != *t.context() {
        return Err(Error::BoundaryMismatch("substitute: sigma does not land in the context".into()));
    }
    if sigma.is_identity() {
        return Ok((t.clone(), Functor::identity(t.total())));
    }
    let (fib, proj) = pullback_split_fibration(&t.fibration, sigma)?;
    Ok((TypeOver::new(fib)?, proj))
}

/// Substitution, dropping the projection.
pub fn substitute(sigma: &Functor, t: &TypeOver) -> Result<TypeOver> {
    substitute_with_projection(sigma, t).map(|(t, _)| t)
}

/// The canonical flattening from the iterated substitution
/// `tau^*(sigma^* T)` to the composite substitution `(sigma.tau)^* T`,
/// renaming `((e, d), c)` to `(e, c)`.
pub fn substitution_flattening(iterated: &TypeOver, composite: &TypeOver) -> Result<Functor> {
    let flatten = |n: &str| -> Result<String> {
        let (ed, c) = split_pair_name(n).ok_or_else(|| Error::MalformedTable(format!("not a pair: {n}")))?;
        let (e, _) = split_pair_name(ed).ok_or_else(|| Error::MalformedTable(format!("not a nested pair: {ed}")))?;
        Ok(pair_name(e, c))
    };
    let mut object_map = BTreeMap::new();
    for o in &iterated.total().objects {
        object_map.insert(o.clone(), flatten(o)?);
    }
    let mut morphism_map = BTreeMap::new();
    for m in &iterated.total().morphisms {
        morphism_map.insert(m.name.clone(), flatten(&m.name)?);
    }
    Ok(Functor::new(iterated.total().clone(), composite.total().clone(), object_map, morphism_map))
}

/// Strict isomorphism of fibrations over a shared base along a given
/// comparison functor: bijective, commuting with the projections and the
/// cleavages on the nose. Violations are reported.
pub fn strict_fibration_iso(kappa: &Functor, from: &SplitFibration, to: &SplitFibration) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    if from.base() != to.base() {
        return Err(Error::BoundaryMismatch("strict_fibration_iso: bases differ".into()));
    }
    rep.merge_scoped("kappa", kappa.validate()?);
    if !kappa.is_bijective() {
        rep.push("iso.bijective", "comparison functor is not bijective");
    }
    if compose_functors(&to.functor, kappa)? != from.functor {
        rep.push("iso.over_base", "comparison does not commute with the projections");
    }
    for ((e, f), l) in &from.cleavage {
        let rhs = to.try_lift(kappa.apply_obj(e), f);
        if rhs != Some(kappa.apply_mor(l)) {
            rep.push("iso.cleavage", format!("lift of {f} at {e} not preserved"));
        }
    }
    Ok(rep)
}

/// Sigma: composition of the two fibrations. Strictly associative and
/// unital at the table level.
pub fn sigma_type(t: &TypeOver, s: &TypeOver) -> Result<TypeOver> {
    if s.context() != t.total() {
        return Err(Error::BoundaryMismatch("sigma_type: S is not over the total of T".into()));
    }
    TypeOver::new(compose_split_fibrations(&s.fibration, &t.fibration)?)
}

/// The pair term-former for Sigma: from `a : T` and `b : S[a]`, the section
/// of `T.S` reading off the family component of `b`.
pub fn sigma_pair(t: &TypeOver, s: &TypeOver, a: &TermOf, b: &TermOf) -> Result<TermOf> {
    let sigma = sigma_type(t, s)?;
    let section = if b.section.target == *s.total() {
        // identity-normalised substitution: b is already a section into X
        b.section.clone()
    } else {
        Functor::from_maps(t.context(), s.total(), |g| {
            split_pair_name(b.section.apply_obj(g)).expect("substituted total is a pair category").0.to_string()
        }, |m| {
            split_pair_name(b.section.apply_mor(m)).expect("substituted total is a pair category").0.to_string()
        })
    };
    let _ = a;
    TermOf::new(&sigma, section)
}

/// First projection of a Sigma term.
pub fn sigma_proj1(t: &TypeOver, s: &TypeOver, pair: &TermOf) -> Result<TermOf> {
    let section = compose_functors(&s.fibration.functor, &pair.section)?;
    TermOf::new(t, section)
}

/// Second projection of a Sigma term: the section of `(proj1)^* S`.
pub fn sigma_proj2(t: &TypeOver, s: &TypeOver, pair: &TermOf) -> Result<TermOf> {
    let a = sigma_proj1(t, s, pair)?;
    let (sub, _) = substitute_with_projection(&a.section, s)?;
    if sub.fibration == s.fibration {
        return TermOf::new(&sub, pair.section.clone());
    }
    let section = Functor::from_maps(t.context(), sub.total(), |g| pair_name(pair.section.apply_obj(g), g), |m| {
        pair_name(pair.section.apply_mor(m), m)
    });
    TermOf::new(&sub, section)
}

/// The Pi type with all the data needed by its term formers.
#[derive(Debug, Clone)]
pub struct PiType {
    pub context_ext: TypeOver,
    pub family: TypeOver,
    pub pushforward: Pushforward,
    /// The Pi fibration over the context, cartesian.
    pub fibration: SplitFibration,
    cocart_ext: SplitFibration,
}

impl PiType {
    pub fn as_type(&self) -> Result<TypeOver> {
        TypeOver::new(self.fibration.clone())
    }
}

/// Pi: pushforward of the family along the context extension.
pub fn pi_type(t: &TypeOver, s: &TypeOver) -> Result<PiType> {
    if s.context() != t.total() {
        return Err(Error::BoundaryMismatch("pi_type: S is not over the total of T".into()));
    }
    let tt = fibration_opfibration_convert(&t.fibration)?;
    let ss = fibration_opfibration_convert(&s.fibration)?;
    let (pf, rho) = pushforward_fibration(&tt, &ss)?;
    let fibration = fibration_opfibration_convert(&rho)?;
    Ok(PiType { context_ext: t.clone(), family: s.clone(), pushforward: pf, fibration, cocart_ext: tt })
}

/// Lambda abstraction: the adjoint transpose of a section of the family.
pub fn lambda(pi: &PiType, body: &TermOf) -> Result<TermOf> {
    let e_cat = pi.context_ext.total();
    if compose_functors(&pi.family.fibration.functor, &body.section)? != Functor::identity(e_cat) {
        return Err(Error::JudgmentMismatch("lambda: body is not a section of the family".into()));
    }
    let gamma = pi.context_ext.context();
    let mut object_map = BTreeMap::new();
    for g in &gamma.objects {
        let (fib, _) = crate::structured::fiber_of(&pi.cocart_ext.functor, g);
        let restricted = Functor::from_maps(&fib, pi.family.total(), |e| body.section.apply_obj(e).to_string(), |m| {
            body.section.apply_mor(m).to_string()
        });
        let name = pi
            .pushforward
            .section_name(g, &restricted)
            .ok_or_else(|| Error::JudgmentMismatch(format!("lambda: restricted section at {g} missing")))?;
        object_map.insert(g.clone(), name.to_string());
    }
    let mut morphism_map = BTreeMap::new();
    for m in &gamma.morphisms {
        let (fib, _) = crate::structured::fiber_of(&pi.cocart_ext.functor, &m.dom);
        let mut comps = BTreeMap::new();
        for e in &fib.objects {
            comps.insert(e.clone(), body.section.apply_mor(pi.cocart_ext.lift(e, &m.name)).to_string());
        }
        let name = pi
            .pushforward
            .family_name(&m.name, &object_map[&m.dom], &object_map[&m.cod], &comps)
            .ok_or_else(|| Error::JudgmentMismatch(format!("lambda: family at {} missing", m.name)))?;
        morphism_map.insert(m.name.clone(), name.to_string());
    }
    let section = Functor::new(gamma.clone(), pi.pushforward.total.clone(), object_map, morphism_map);
    TermOf::new(&pi.as_type()?, section)
}

/// Evaluation: from `f : Pi(T, S)`, the section of `S` over the extended
/// context sending `e` to the value of `f(T e)` at `e`.
pub fn eval_term(pi: &PiType, f: &TermOf) -> Result<TermOf> {
    let e_cat = pi.context_ext.total().clone();
    let x_cat = pi.family.total().clone();
    let mut object_map = BTreeMap::new();
    for e in &e_cat.objects {
        let g = pi.context_ext.fibration.functor.apply_obj(e);
        let sec = &pi.pushforward.sections[f.section.apply_obj(g)].section;
        object_map.insert(e.clone(), sec.apply_obj(e).to_string());
    }
    let mut morphism_map = BTreeMap::new();
    for m in &e_cat.morphisms {
        let g = pi.context_ext.fibration.functor.apply_mor(&m.name).to_string();
        let fam = &pi.pushforward.families[f.section.apply_mor(&g)];
        let lift = pi.cocart_ext.lift(&m.dom, &g).to_string();
        let vprime = e_cat.compose(&m.name, e_cat.inverse(&lift)).to_string();
        let tgt_section = &pi.pushforward.sections[&fam.tgt].section;
        morphism_map.insert(
            m.name.clone(),
            x_cat.compose(tgt_section.apply_mor(&vprime), &fam.components[&m.dom]).to_string(),
        );
    }
    let section = Functor::new(e_cat, x_cat, object_map, morphism_map);
    TermOf::new(&pi.family, section)
}

/// Substitution of a term along a map into the context extension: from
/// `u : S` over `Gamma.T` and `a : Gamma -> Gamma.T`, the section of
/// `a^* S`.
pub fn term_substitute(a: &Functor, s: &TypeOver, u: &TermOf) -> Result<TermOf> {
    let (sub, _) = substitute_with_projection(a, s)?;
    if sub.fibration == s.fibration {
        return TermOf::new(&sub, compose_functors(&u.section, a)?);
    }
    let gamma = &a.source;
    let section = Functor::from_maps(gamma, sub.total(), |g| pair_name(u.section.apply_obj(a.apply_obj(g)), g), |m| {
        pair_name(u.section.apply_mor(a.apply_mor(m)), m)
    });
    TermOf::new(&sub, section)
}

/// Application `f a`: evaluation followed by substitution along `a`.
pub fn app(pi: &PiType, f: &TermOf, a: &TermOf) -> Result<TermOf> {
    let ev = eval_term(pi, f)?;
    term_substitute(&a.section, &pi.family, &ev)
}

/// The path object of a type: the groupoid of vertical morphisms with the
/// reflection `r = (a |-> 1_a)` (left adjoint `cod`) and the fibration
/// `rho = (dom, cod)` with conjugation cleavage.
#[derive(Debug, Clone)]
pub struct PathObject {
    pub total: FinCategory,
    /// `r : E -> total` with its rari structure.
    pub reflection: SplitReflection,
    /// `rho : total -> E x_Gamma E`, cartesian.
    pub rho: SplitFibration,
    /// The diagonal `E -> E x_Gamma E`.
    pub diag: Functor,
    /// `E x_Gamma E` as a fibration over the context (componentwise lifts).
    pub pair_fibration: SplitFibration,
    /// Decomposition of every path morphism name into `(u, v, src, tgt)`.
    pub mor_parts: BTreeMap<String, (String, String, String, String)>,
}

fn path_mor_name(u: &str, v: &str, src: &str, tgt: &str) -> String {
    format!("[{u};{v}]{src}>{tgt}")
}

/// Build the path object of `T`. Requires the groupoid setting.
pub fn id_type(t: &TypeOver) -> Result<PathObject> {
    let e_cat = t.total().clone();
    let gamma = t.context().clone();
    if !e_cat.is_groupoid() || !gamma.is_groupoid() {
        return Err(Error::NotAGroupoid("id_type requires groupoids".into()));
    }
    let p = &t.fibration.functor;
    let verticals: Vec<String> = e_cat
        .morphisms
        .iter()
        .filter(|m| gamma.is_identity(p.apply_mor(&m.name)))
        .map(|m| m.name.clone())
        .collect();

    let mut morphisms = Vec::new();
    let mut mor_parts: BTreeMap<String, (String, String, String, String)> = BTreeMap::new();
    for alpha in &verticals {
        for beta in &verticals {
            for u in e_cat.hom(e_cat.dom(alpha), e_cat.dom(beta)) {
                for v in e_cat.hom(e_cat.cod(alpha), e_cat.cod(beta)) {
                    if p.apply_mor(&u.name) != p.apply_mor(&v.name) {
                        continue;
                    }
                    if e_cat.try_compose(&v.name, alpha) != e_cat.try_compose(beta, &u.name) {
                        continue;
                    }
                    let name = path_mor_name(&u.name, &v.name, alpha, beta);
                    morphisms.push(Morphism::new(name.clone(), alpha.clone(), beta.clone()));
                    mor_parts.insert(name, (u.name.clone(), v.name.clone(), alpha.clone(), beta.clone()));
                }
            }
        }
    }
    let mut identities = BTreeMap::new();
    for alpha in &verticals {
        let ida = e_cat.identity(e_cat.dom(alpha)).to_string();
        let idb = e_cat.identity(e_cat.cod(alpha)).to_string();
        identities.insert(alpha.clone(), path_mor_name(&ida, &idb, alpha, alpha));
    }
    let mut composition = BTreeMap::new();
    for (n2, (u2, v2, s2, t2)) in &mor_parts {
        for (n1, (u1, v1, s1, t1)) in &mor_parts {
            if t1 != s2 {
                continue;
            }
            let u = e_cat.compose(u2, u1).to_string();
            let v = e_cat.compose(v2, v1).to_string();
            composition.insert((n2.clone(), n1.clone()), path_mor_name(&u, &v, s1, t2));
        }
    }
    let mut inverses = BTreeMap::new();
    for (n, (u, v, s, tg)) in &mor_parts {
        inverses.insert(n.clone(), path_mor_name(e_cat.inverse(u), e_cat.inverse(v), tg, s));
    }
    let total = FinCategory::new(verticals.clone(), morphisms, identities, composition, Some(inverses));
    total.check_tables()?;

    // r : E -> total with left adjoint cod and unit theta_alpha = (alpha, 1)
    let section = Functor::from_maps(&e_cat, &total, |e| e_cat.identity(e).to_string(), |w| {
        let (d, c) = (e_cat.dom(w), e_cat.cod(w));
        path_mor_name(w, w, e_cat.identity(d), e_cat.identity(c))
    });
    let retraction = {
        let parts = mor_parts.clone();
        Functor::from_maps(&total, &e_cat, |a| e_cat.cod(a).to_string(), move |m| parts[m].1.clone())
    };
    let rl = compose_functors(&section, &retraction)?;
    let components: BTreeMap<String, String> = verticals
        .iter()
        .map(|a| {
            let idc = e_cat.identity(e_cat.cod(a)).to_string();
            (a.clone(), path_mor_name(a, &idc, a, &idc))
        })
        .collect();
    let reflection = SplitReflection {
        section,
        retraction,
        unit: NatTransformation::new(Functor::identity(&total), rl, components),
    };

    // E x_Gamma E with its componentwise fibration over the context
    let (ee, _, _) = crate::cat::pullback_category(p, p)?;
    let mut pair_cleavage = BTreeMap::new();
    for o in &ee.objects {
        let (e0, e1) = split_pair_name(o).expect("pair object");
        for g in gamma.morphisms_to(p.apply_obj(e0)) {
            pair_cleavage.insert(
                (o.clone(), g.name.clone()),
                pair_name(t.fibration.lift(e0, &g.name), t.fibration.lift(e1, &g.name)),
            );
        }
    }
    let pair_fibration = SplitFibration {
        functor: Functor::from_maps(&ee, &gamma, |o| p.apply_obj(split_pair_name(o).unwrap().0).to_string(), |m| {
            p.apply_mor(split_pair_name(m).unwrap().0).to_string()
        }),
        orientation: Orientation::Cartesian,
        cleavage: pair_cleavage,
    };

    // rho = (dom, cod) with conjugation cleavage
    let rho_functor = {
        let parts = mor_parts.clone();
        Functor::from_maps(&total, &ee, |a| pair_name(e_cat.dom(a), e_cat.cod(a)), move |m| {
            let (u, v, _, _) = &parts[m];
            pair_name(u, v)
        })
    };
    let mut rho_cleavage = BTreeMap::new();
    for alpha in &verticals {
        for bm in &ee.morphisms {
            if *ee.cod(&bm.name) != *rho_functor.apply_obj(alpha) {
                continue;
            }
            let (u, v) = split_pair_name(&bm.name).expect("pair morphism");
            let alpha_src = e_cat.compose_chain(&[e_cat.inverse(v), alpha, u]);
            rho_cleavage.insert((alpha.clone(), bm.name.clone()), path_mor_name(u, v, &alpha_src, alpha));
        }
    }
    let rho = SplitFibration { functor: rho_functor, orientation: Orientation::Cartesian, cleavage: rho_cleavage };

    let diag = Functor::from_maps(&e_cat, &ee, |e| pair_name(e, e), |m| pair_name(m, m));
    Ok(PathObject { total, reflection, rho, diag, pair_fibration, mor_parts })
}

impl PathObject {
    /// The Id type as a fibration over the context: `pair_fibration . rho`.
    pub fn over_context(&self) -> Result<TypeOver> {
        TypeOver::new(compose_split_fibrations(&self.rho, &self.pair_fibration)?)
    }

    /// Reflexivity: the term `r . t` of the Id type.
    pub fn refl(&self, t: &TermOf) -> Result<TermOf> {
        let section = compose_functors(&self.reflection.section, &t.section)?;
        TermOf::new(&self.over_context()?, section)
    }

    /// `rho . r` as a functor, for the SFPO equation `rho.r = delta`.
    pub fn rho_after_r(&self) -> Result<Functor> {
        compose_functors(&self.rho.functor, &self.reflection.section)
    }
}

/// The J eliminator: the canonical lift of `(d, 1) : r -> C`, a section of
/// `C` over the path total with `J.r = d` on the nose.
pub fn j_eliminator(path: &PathObject, c: &TypeOver, d: &Functor) -> Result<TermOf> {
    if c.context() != &path.total {
        return Err(Error::JudgmentMismatch("j_eliminator: C is not over the path total".into()));
    }
    if d.source != *path.reflection.dom_cat() || d.target != *c.total() {
        return Err(Error::JudgmentMismatch("j_eliminator: d has the wrong endpoints".into()));
    }
    if compose_functors(&c.fibration.functor, d)? != path.reflection.section {
        return Err(Error::JudgmentMismatch("j_eliminator: d is not a section over refl".into()));
    }
    let problem = Square::new(
        path.reflection.section.clone(),
        c.fibration.functor.clone(),
        d.clone(),
        Functor::identity(&path.total),
    )?;
    let j = crate::lifting::canonical_lift(&path.reflection, &c.fibration, &problem)?;
    TermOf::new(c, j)
}

/// Pseudo-stability of Pi under substitution: the substitution square is a
/// structured pullback of fibrations, the Beck--Chevalley component
/// equality holds on a canonical corpus of sliced reflections, and the Pi
/// comparison square is a structured pullback.
pub fn pi_pseudostability_check(sigma: &Functor, t: &TypeOver, s: &TypeOver) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let (t_sub, sigma_plus) = substitute_with_projection(sigma, t)?;
    let (s_sub, _) = substitute_with_projection(&sigma_plus, s)?;

    // substitution square of context extensions, as opfibrations
    let p_co = fibration_opfibration_convert(&t_sub.fibration)?;
    let q_co = fibration_opfibration_convert(&t.fibration)?;
    let square = Square::new(p_co.functor.clone(), q_co.functor.clone(), sigma_plus.clone(), sigma.clone())?;
    rep.merge_scoped(
        "substitution_square",
        check_structured_square(&StructuredSquare::Fibration {
            square: square.clone(),
            left: p_co.clone(),
            right: q_co.clone(),
        })?,
    );
    if !is_pullback_square(&square)? {
        rep.push("substitution_square.pullback", "sigma+ square is not a pullback");
    }

    // BC component equality over a canonical corpus of sliced reflections
    let corpus = canonical_reflection_corpus(&sigma.source);
    rep.merge_scoped("beck_chevalley", beck_chevalley_check(&square, &p_co, &q_co, &corpus)?);

    // Pi comparison square
    let pi = pi_type(t, s)?;
    let pi_sub = pi_type(&t_sub, &s_sub)?;
    let kappa = if sigma.is_identity() {
        Functor::identity(&pi.pushforward.total)
    } else {
        pi_comparison(&pi_sub, &pi, sigma)?
    };
    let comparison = Square::new(pi_sub.fibration.functor.clone(), pi.fibration.functor.clone(), kappa, sigma.clone())?;
    if !is_pullback_square(&comparison)? {
        rep.push("pi_comparison.pullback", "Pi comparison square is not a pullback");
    }
    rep.merge_scoped(
        "pi_comparison",
        check_structured_square(&StructuredSquare::Fibration {
            square: comparison,
            left: pi_sub.fibration.clone(),
            right: pi.fibration.clone(),
        })?,
    );
    Ok(rep)
}

/// The canonical comparison functor between the substituted Pi and the
/// original Pi: forget the substitution component of every section.
fn pi_comparison(pi_sub: &PiType, pi: &PiType, sigma: &Functor) -> Result<Functor> {
    let delta_cat = pi_sub.context_ext.context().clone();
    let mut object_map = BTreeMap::new();
    for (sn, sp) in &pi_sub.pushforward.sections {
        let g = sigma.apply_obj(&sp.base).to_string();
        let idd = delta_cat.identity(&sp.base).to_string();
        let (fib, _) = crate::structured::fiber_of(&pi.cocart_ext.functor, &g);
        let sp_section = sp.section.clone();
        let base = sp.base.clone();
        let underlying = Functor::from_maps(
            &fib,
            pi.family.total(),
            move |e| {
                split_pair_name(sp_section.apply_obj(&pair_name(e, &base)))
                    .expect("substituted family total")
                    .0
                    .to_string()
            },
            {
                let sp_section = sp.section.clone();
                let idd = idd.clone();
                move |m| {
                    split_pair_name(sp_section.apply_mor(&pair_name(m, &idd)))
                        .expect("substituted family total")
                        .0
                        .to_string()
                }
            },
        );
        let name = pi
            .pushforward
            .section_name(&g, &underlying)
            .ok_or_else(|| Error::JudgmentMismatch(format!("pi comparison: section of {sn} missing")))?;
        object_map.insert(sn.clone(), name.to_string());
    }
    let mut morphism_map = BTreeMap::new();
    for (fname, fam) in &pi_sub.pushforward.families {
        let g = sigma.apply_mor(&fam.base_mor).to_string();
        let mut comps = BTreeMap::new();
        for (ed, c) in &fam.components {
            let (e, _) = split_pair_name(ed).expect("substituted fiber object");
            comps.insert(e.to_string(), split_pair_name(c).expect("substituted family total").0.to_string());
        }
        let name = pi
            .pushforward
            .family_name(&g, &object_map[&fam.src], &object_map[&fam.tgt], &comps)
            .ok_or_else(|| Error::JudgmentMismatch(format!("pi comparison: family of {fname} missing")))?;
        morphism_map.insert(fname.clone(), name.to_string());
    }
    Ok(Functor::new(pi_sub.pushforward.total.clone(), pi.pushforward.total.clone(), object_map, morphism_map))
}

/// A small deterministic corpus of sliced reflections over a groupoid: the
/// identity reflection and a freely adjoined retract on the first object.
pub fn canonical_reflection_corpus(base: &FinCategory) -> Vec<crate::frobenius::SlicedReflection> {
    let mut out = Vec::new();
    out.push(crate::frobenius::SlicedReflection {
        refl: SplitReflection::identity(base),
        extension: Functor::identity(base),
    });
    if let Some(obj) = base.objects.first() {
        if let Ok(r) = adjoin_retract(base, obj, &format!("{obj}+")) {
            let ext = r.retraction.clone();
            out.push(crate::frobenius::SlicedReflection { refl: r, extension: ext });
        }
    }
    out
}

/// Stability of the path object under substitution: `rho` sends the
/// substitution pullback square to a structured pullback square, and the
/// substituted path object is strictly isomorphic to the pullback of the
/// original along the canonical comparison.
pub fn id_stability_check(sigma: &Functor, t: &TypeOver) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let (t_sub, sigma_plus) = substitute_with_projection(sigma, t)?;
    let path = id_type(t)?;
    let path_sub = id_type(&t_sub)?;
    // induced map on path totals and pair groupoids
    let map_path_mor = |m: &str| -> String {
        let (u, v, s, tg) = &path_sub.mor_parts[m];
        path_mor_name(
            sigma_plus.apply_mor(u),
            sigma_plus.apply_mor(v),
            sigma_plus.apply_mor(s),
            sigma_plus.apply_mor(tg),
        )
    };
    let p_sigma = Functor::from_maps(&path_sub.total, &path.total, |a| sigma_plus.apply_mor(a).to_string(), |m| {
        map_path_mor(m)
    });
    let sigma_pair_map = Functor::from_maps(path_sub.rho.base(), path.rho.base(), |o| {
        let (e0, e1) = split_pair_name(o).expect("pair object");
        pair_name(sigma_plus.apply_obj(e0), sigma_plus.apply_obj(e1))
    }, |m| {
        let (u, v) = split_pair_name(m).expect("pair morphism");
        pair_name(sigma_plus.apply_mor(u), sigma_plus.apply_mor(v))
    });
    let square = Square::new(path_sub.rho.functor.clone(), path.rho.functor.clone(), p_sigma, sigma_pair_map.clone())?;
    if !is_pullback_square(&square)? {
        rep.push("id_stability.pullback", "path square is not a pullback");
    }
    rep.merge_scoped(
        "id_stability.structured",
        check_structured_square(&StructuredSquare::Fibration {
            square,
            left: path_sub.rho.clone(),
            right: path.rho.clone(),
        })?,
    );
    // the substituted path object is the pullback of the original, on the nose
    let (pulled, _) = pullback_split_fibration(&path.rho, &sigma_pair_map)?;
    let kappa = Functor::from_maps(&path_sub.total, pulled.total(), |a| {
        pair_name(sigma_plus.apply_mor(a), &pair_name(path_sub.total_dom(a), path_sub.total_cod(a)))
    }, |m| {
        let (u, v) = {
            let (u, v, _, _) = &path_sub.mor_parts[m];
            (u.clone(), v.clone())
        };
        pair_name(&map_path_mor(m), &pair_name(&u, &v))
    });
    rep.merge_scoped("id_stability.iso", strict_fibration_iso(&kappa, &path_sub.rho, &pulled)?);
    Ok(rep)
}

impl PathObject {
    fn total_dom(&self, alpha: &str) -> &str {
        self.reflection.section.source.dom(alpha)
    }

    fn total_cod(&self, alpha: &str) -> &str {
        self.reflection.section.source.cod(alpha)
    }
}
