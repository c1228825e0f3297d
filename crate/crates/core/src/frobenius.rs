//! Frobenius structure for (split reflections, split opfibrations), its
//! coherence with structured squares and vertical composition, strong
//! Frobenius (unit/counit lifts), the derived pushforward structure, and the
//! Beck--Chevalley checks.
//!
//! Given a cocartesian split fibration `P : A -> B` and a sliced reflection
//! with section `R : D -> C` and extension `U : C -> B`, the transported
//! reflection over `A` lives on the pullbacks `A x_B D` and `A x_B C`:
//! the auxiliary functor sends `(a, c)` to the transport of `a` along
//! `U(theta_c)`, the retraction is `G = (F, L.pi)`, and the unit is the pair
//! of the chosen lift with the original unit component. The three proof
//! equations (`lift of U theta at section points is an identity`,
//! `G.P*R = 1`, `theta at section points is an identity pair`) are checked
//! explicitly on every call.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};


use crate::cat::{compose_functors, pair_name, pullback_category, split_pair_name, FinCategory, Functor, NatTransformation};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::squares::{SliceMorphism, Square};
use crate::structured::{
    check_structured_square, compose_split_reflections, fibration_opfibration_convert, validate_split_reflection,
    Orientation, SplitFibration, SplitReflection, StructuredSquare,
};
use crate::transport::{
    pullback_object, pushforward_arrows, slice_counit, transpose_over_to, Pushforward,
};

/// A split reflection together with an extension of its section's codomain
/// to a base: an object of `SplRef/base` in the arrow view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedReflection {
    pub refl: SplitReflection,
    pub extension: Functor,
}

impl SlicedReflection {
    pub fn new(refl: SplitReflection, extension: Functor) -> Result<Self> {
        if extension.source != *refl.cod_cat() {
            return Err(Error::ExtensionMismatch("sliced reflection: extension not on cod of section".into()));
        }
        Ok(SlicedReflection { refl, extension })
    }

    pub fn base(&self) -> &FinCategory {
        &self.extension.target
    }

    /// Extension of the domain object, `U.R`.
    pub fn dom_extension(&self) -> Functor {
        compose_functors(&self.extension, &self.refl.section).expect("sliced reflection invariant")
    }
}

/// A split fibration together with an extension of its base to an ambient
/// category: an object of `SplFib/base` in the arrow view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedFibration {
    pub fib: SplitFibration,
    pub extension: Functor,
}

impl SlicedFibration {
    pub fn new(fib: SplitFibration, extension: Functor) -> Result<Self> {
        if extension.source != *fib.base() {
            return Err(Error::ExtensionMismatch("sliced fibration: extension not on cod of the map".into()));
        }
        Ok(SlicedFibration { fib, extension })
    }
}

/// The result of transporting a sliced reflection along an opfibration,
/// with the pullback projections and the proof-equation report.
#[derive(Debug, Clone)]
pub struct FrobeniusTransport {
    pub output: SlicedReflection,
    /// Second projection `A x_B dom -> dom`.
    pub proj_dom: Functor,
    /// Second projection `A x_B cod -> cod`.
    pub proj_cod: Functor,
    /// Proof equations and output validation; empty for valid inputs.
    pub report: ValidationReport,
}

/// Transport a sliced reflection over `B` along a cocartesian split
/// fibration `P : A -> B`, producing a sliced reflection over `A`.
pub fn frobenius_transport(p: &SplitFibration, sr: &SlicedReflection) -> Result<FrobeniusTransport> {
    if p.orientation != Orientation::Cocartesian {
        return Err(Error::OrientationMismatch("frobenius_transport needs a cocartesian fibration".into()));
    }
    if sr.base() != p.base() {
        return Err(Error::ExtensionMismatch("frobenius_transport: reflection is not sliced over the base of P".into()));
    }
    let u = &sr.extension;
    let refl = &sr.refl;
    let a_cat = p.total();
    let ext_dom = sr.dom_extension();
    let (ecod, _ecod_to_a, proj_cod) = pullback_category(&p.functor, u)?;
    let (edom, edom_to_a, proj_dom) = pullback_category(&p.functor, &ext_dom)?;
    let _ = edom_to_a;

    // section' : (a, x) |-> (a, R x)
    let section = Functor::from_maps(
        &edom,
        &ecod,
        |o| {
            let (a, x) = split_pair_name(o).expect("pullback object");
            pair_name(a, refl.section.apply_obj(x))
        },
        |m| {
            let (a, x) = split_pair_name(m).expect("pullback morphism");
            pair_name(a, refl.section.apply_mor(x))
        },
    );

    // F(a, y) = transport of a along U(theta_y); chosen lifts cached
    let mut f_obj: BTreeMap<String, String> = BTreeMap::new();
    let mut chosen: BTreeMap<String, String> = BTreeMap::new();
    for o in &ecod.objects {
        let (a, y) = split_pair_name(o).expect("pullback object");
        let u_theta = u.apply_mor(refl.unit_at(y));
        let l = p.lift(a, u_theta).to_string();
        f_obj.insert(o.clone(), a_cat.cod(&l).to_string());
        chosen.insert(o.clone(), l);
    }
    let mut f_mor: BTreeMap<String, String> = BTreeMap::new();
    for mo in &ecod.morphisms {
        let (m, n) = split_pair_name(&mo.name).expect("pullback morphism");
        let l1 = &chosen[&mo.dom];
        let l2 = &chosen[&mo.cod];
        let g = a_cat.compose(l2, m).to_string();
        let over = u.apply_mor(refl.section.apply_mor(refl.retraction.apply_mor(n)));
        f_mor.insert(mo.name.clone(), p.cocart_factor(l1, &g, over)?);
    }

    // G = (F, L . pi)
    let retraction = Functor::from_maps(
        &ecod,
        &edom,
        |o| {
            let (_, y) = split_pair_name(o).expect("pullback object");
            pair_name(&f_obj[o], refl.retraction.apply_obj(y))
        },
        |m| {
            let (_, n) = split_pair_name(m).expect("pullback morphism");
            pair_name(&f_mor[m], refl.retraction.apply_mor(n))
        },
    );

    // theta'_{(a, y)} = (chosen lift, theta_y)
    let rl = compose_functors(&section, &retraction)?;
    let components: BTreeMap<String, String> = ecod
        .objects
        .iter()
        .map(|o| {
            let (_, y) = split_pair_name(o).expect("pullback object");
            (o.clone(), pair_name(&chosen[o], refl.unit_at(y)))
        })
        .collect();
    let unit = NatTransformation::new(Functor::identity(&ecod), rl, components);
    let out = SplitReflection { section, retraction, unit };

    let mut report = ValidationReport::new();
    // eq:star -- the lift of U(theta) at section points is an identity
    for o in &edom.objects {
        let (a, x) = split_pair_name(o).expect("pullback object");
        let rx = refl.section.apply_obj(x);
        let l = p.lift(a, u.apply_mor(refl.unit_at(rx)));
        if !a_cat.is_identity(l) {
            report.push("frobenius.star", format!("lift of U theta at ({a}, R {x}) is {l}, not an identity"));
        }
    }
    // G . P*R = 1
    if compose_functors(&out.retraction, &out.section)? != Functor::identity(&edom) {
        report.push("frobenius.left_inverse", "G.P*R != 1");
    }
    // theta' at section points is the identity pair
    for o in &edom.objects {
        let so = out.section.apply_obj(o);
        if out.unit_at(so) != ecod.identity(so) {
            report.push("frobenius.unit_at_sections", format!("theta'_{so} is not an identity"));
        }
    }
    report.merge_scoped("output", validate_split_reflection(&out)?);

    let extension = Functor::from_maps(&ecod, a_cat, |o| {
        split_pair_name(o).expect("pullback object").0.to_string()
    }, |m| {
        split_pair_name(m).expect("pullback morphism").0.to_string()
    });
    Ok(FrobeniusTransport {
        output: SlicedReflection { refl: out, extension },
        proj_dom,
        proj_cod,
        report,
    })
}

/// A morphism of sliced reflections over the base of `P`: a serially
/// commuting square `(top, bottom) : left -> right` compatible with the
/// extensions (`U . bottom = U'`).
#[derive(Debug, Clone)]
pub struct ReflectionSquareCase {
    pub left: SlicedReflection,
    pub right: SlicedReflection,
    pub top: Functor,
    pub bottom: Functor,
}

impl ReflectionSquareCase {
    fn check_input(&self) -> Result<Square> {
        if compose_functors(&self.right.extension, &self.bottom)? != self.left.extension {
            return Err(Error::ExtensionMismatch("reflection square: U.bottom != U'".into()));
        }
        let sq = Square::new(
            self.left.refl.section.clone(),
            self.right.refl.section.clone(),
            self.top.clone(),
            self.bottom.clone(),
        )?;
        let rep = check_structured_square(&StructuredSquare::Reflection {
            square: sq.clone(),
            left: self.left.refl.clone(),
            right: self.right.refl.clone(),
        })?;
        if !rep.ok() {
            return Err(Error::KindMismatch(format!("reflection square malformed: {}", rep.violations[0])));
        }
        Ok(sq)
    }
}

/// Transport a morphism of sliced reflections and check the transported
/// square is again a morphism of split reflections (`G.P*Y = P*X.G'`).
pub fn frobenius_preserves_squares(p: &SplitFibration, case: &ReflectionSquareCase) -> Result<ValidationReport> {
    case.check_input()?;
    let t_left = frobenius_transport(p, &case.left)?;
    let t_right = frobenius_transport(p, &case.right)?;
    let mut rep = ValidationReport::new();
    rep.merge_scoped("left", t_left.report.clone());
    rep.merge_scoped("right", t_right.report.clone());
    let top = Functor::from_maps(
        t_left.output.refl.dom_cat(),
        t_right.output.refl.dom_cat(),
        |o| {
            let (a, x) = split_pair_name(o).expect("pullback object");
            pair_name(a, case.top.apply_obj(x))
        },
        |m| {
            let (a, x) = split_pair_name(m).expect("pullback morphism");
            pair_name(a, case.top.apply_mor(x))
        },
    );
    let bottom = Functor::from_maps(
        t_left.output.refl.cod_cat(),
        t_right.output.refl.cod_cat(),
        |o| {
            let (a, y) = split_pair_name(o).expect("pullback object");
            pair_name(a, case.bottom.apply_obj(y))
        },
        |m| {
            let (a, y) = split_pair_name(m).expect("pullback morphism");
            pair_name(a, case.bottom.apply_mor(y))
        },
    );
    let sq = Square::new(
        t_left.output.refl.section.clone(),
        t_right.output.refl.section.clone(),
        top,
        bottom.clone(),
    )?;
    rep.merge_scoped(
        "transported",
        check_structured_square(&StructuredSquare::Reflection {
            square: sq,
            left: t_left.output.refl.clone(),
            right: t_right.output.refl.clone(),
        })?,
    );
    if compose_functors(&t_right.output.extension, &bottom)? != t_left.output.extension {
        rep.push("transported.extension", "transported square not over A");
    }
    Ok(rep)
}

/// Vertical functoriality of the Frobenius structure: transporting a
/// composite of sliced reflections equals the composite of the transports
/// (`G'' = G'.G` and `theta'' = (P*R . theta' . G).theta`, table equality).
pub fn frobenius_preserves_composition(
    p: &SplitFibration,
    upper: &SlicedReflection,
    lower: &SlicedReflection,
) -> Result<ValidationReport> {
    if upper.extension != lower.dom_extension() {
        return Err(Error::ExtensionMismatch("frobenius composition: upper is not sliced over U.R".into()));
    }
    let composite = SlicedReflection {
        refl: compose_split_reflections(&lower.refl, &upper.refl)?,
        extension: lower.extension.clone(),
    };
    let t_lower = frobenius_transport(p, lower)?;
    let t_upper = frobenius_transport(p, upper)?;
    let t_comp = frobenius_transport(p, &composite)?;
    let pasted = compose_split_reflections(&t_lower.output.refl, &t_upper.output.refl)?;
    let mut rep = ValidationReport::new();
    rep.merge_scoped("lower", t_lower.report.clone());
    rep.merge_scoped("upper", t_upper.report.clone());
    rep.merge_scoped("composite", t_comp.report.clone());
    if pasted.section != t_comp.output.refl.section {
        rep.push("composition.section", "P*(R.R') != P*R.P*R'");
    }
    if pasted.retraction != t_comp.output.refl.retraction {
        rep.push("composition.retraction", "G'' != G'.G");
    }
    if pasted.unit != t_comp.output.refl.unit {
        rep.push("composition.unit", "theta'' != (P*R.theta'.G).theta");
    }
    Ok(rep)
}

/// The strong Frobenius checks of the counit and unit lifts.
///
/// For every sliced reflection `(r, W)` over `B`:
/// - the counit square `(pi_dom, pi_cod) : P*(r) -> r` must be a morphism of
///   split reflections (`pi.G = L.pi`);
/// - the unit square `(U.R x 1, U x 1) : P*(r) -> P*P_!(P*(r))` over `A`
///   must be one as well, which reduces to `U R L c = (P U theta_c)_! U c`.
///
/// The unit check runs on the transported reflection (and on any aligned
/// over-`A` corpus passed to [`strong_frobenius_unit_square`]); transported
/// reflections carry cleavage-aligned units, which is exactly what the
/// equality needs.
pub fn strong_frobenius_checks(p: &SplitFibration, corpus: &[SlicedReflection]) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    for (i, sr) in corpus.iter().enumerate() {
        let scope = format!("case {i}");
        let t = frobenius_transport(p, sr)?;
        rep.merge_scoped(&format!("{scope}.transport"), t.report.clone());
        // counit square (pi_dom, pi_cod) : P*(r) -> r
        let counit_sq = Square::new(
            t.output.refl.section.clone(),
            sr.refl.section.clone(),
            t.proj_dom.clone(),
            t.proj_cod.clone(),
        )?;
        let counit_rep = check_structured_square(&StructuredSquare::Reflection {
            square: counit_sq,
            left: t.output.refl.clone(),
            right: sr.refl.clone(),
        })?;
        rep.merge_scoped(&format!("{scope}.counit"), counit_rep);
        // unit square on the transported (aligned) reflection over A
        let unit_rep = strong_frobenius_unit_square(p, &t.output)?;
        rep.merge_scoped(&format!("{scope}.unit"), unit_rep);
    }
    Ok(rep)
}

/// The unit-lift check for one sliced reflection over the total of `P`:
/// whether `(U.R x 1, U x 1) : r -> P*(P_! r)` is a morphism of split
/// reflections. The retraction half is the equality
/// `U R L c = (P U theta_c)_! U c`.
pub fn strong_frobenius_unit_square(p: &SplitFibration, over_a: &SlicedReflection) -> Result<ValidationReport> {
    if over_a.base() != p.total() {
        return Err(Error::ExtensionMismatch("unit square: reflection is not sliced over the total of P".into()));
    }
    let pushed = SlicedReflection {
        refl: over_a.refl.clone(),
        extension: compose_functors(&p.functor, &over_a.extension)?,
    };
    let t = frobenius_transport(p, &pushed)?;
    let u = &over_a.extension;
    let refl = &over_a.refl;
    let top = Functor::from_maps(refl.dom_cat(), t.output.refl.dom_cat(), |x| {
        pair_name(u.apply_obj(refl.section.apply_obj(x)), x)
    }, |m| {
        pair_name(u.apply_mor(refl.section.apply_mor(m)), m)
    });
    let bottom = Functor::from_maps(refl.cod_cat(), t.output.refl.cod_cat(), |y| pair_name(u.apply_obj(y), y), |m| {
        pair_name(u.apply_mor(m), m)
    });
    let mut rep = ValidationReport::new();
    rep.merge_scoped("transport", t.report.clone());
    let sq = Square::new(refl.section.clone(), t.output.refl.section.clone(), top, bottom)?;
    rep.merge_scoped(
        "unit_square",
        check_structured_square(&StructuredSquare::Reflection {
            square: sq,
            left: refl.clone(),
            right: t.output.refl.clone(),
        })?,
    );
    Ok(rep)
}

/// The pushforward structure applied to one sliced fibration: the section
/// groupoid construction on both objects, with the cleavage induced by the
/// pointwise chosen lifts of the inner fibration.
#[derive(Debug, Clone)]
pub struct PushforwardStructureOut {
    pub output: SlicedFibration,
    pub pf_dom: Pushforward,
    pub pf_cod: Pushforward,
}

/// `P_*(q, a)`: the arrow-level pushforward of a sliced fibration, with its
/// split cleavage.
pub fn pushforward_structure(p: &SplitFibration, sf: &SlicedFibration) -> Result<PushforwardStructureOut> {
    if sf.extension.target != *p.total() {
        return Err(Error::ExtensionMismatch("pushforward_structure: fibration is not sliced over the total of P".into()));
    }
    let qq = match sf.fib.orientation {
        Orientation::Cocartesian => sf.fib.clone(),
        Orientation::Cartesian => fibration_opfibration_convert(&sf.fib)?,
    };
    let pp = match p.orientation {
        Orientation::Cocartesian => p.clone(),
        Orientation::Cartesian => fibration_opfibration_convert(p)?,
    };
    let slice = SliceMorphism::new(qq.functor.clone(), sf.extension.clone())?;
    let (pushed, pf_dom, pf_cod) = pushforward_arrows(&pp, &slice)?;
    // cleavage: the lift of a cod-family phi at a dom-section (b, s) is the
    // family of chosen q-lifts of phi's components at s; its target section
    // is the pointwise conjugate.
    let mut cleavage = BTreeMap::new();
    for (fname, fam) in &pf_cod.families {
        for (sn, sp) in &pf_dom.sections {
            if pushed.map.apply_obj(sn) != fam.src {
                continue;
            }
            let mut comp: BTreeMap<String, String> = BTreeMap::new();
            for (a, phi_a) in &fam.components {
                comp.insert(a.clone(), qq.lift(sp.section.apply_obj(a), phi_a).to_string());
            }
            let tgt_section =
                crate::transport::conjugate_section(&pp, qq.total(), &sp.section, &fam.base_mor, &comp)?;
            let tgt = pf_dom
                .section_name(pp.base().cod(&fam.base_mor), &tgt_section)
                .ok_or_else(|| Error::MalformedCleavage("pushforward cleavage: target section missing".into()))?
                .to_string();
            let name = pf_dom
                .family_name(&fam.base_mor, sn, &tgt, &comp)
                .ok_or_else(|| Error::MalformedCleavage("pushforward cleavage: family missing".into()))?;
            cleavage.insert((sn.clone(), fname.clone()), name.to_string());
        }
    }
    let fib = SplitFibration { functor: pushed.map.clone(), orientation: Orientation::Cocartesian, cleavage };
    let output = SlicedFibration { fib, extension: pushed.extension.clone() };
    Ok(PushforwardStructureOut { output, pf_dom, pf_cod })
}

/// One case of the theorem-witness check: a lifting problem over `B`
/// against the pushforward of a sliced fibration.
#[derive(Debug, Clone)]
pub struct TheoremWitnessCase {
    pub left: SlicedReflection,
    /// `(u, v) : section -> P_* q`, a commuting square over `B`.
    pub top: Functor,
    pub bottom: Functor,
}

/// The constructive content of the Frobenius/pushforward bijection: for
/// each problem, the filler from the pushforward's own cleavage equals the
/// filler obtained by transposing, applying the Frobenius structure and
/// lifting over the total, then transposing back.
pub fn pushforward_filler_agreement(
    p: &SplitFibration,
    sf: &SlicedFibration,
    out: &PushforwardStructureOut,
    cases: &[TheoremWitnessCase],
) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let qq = match sf.fib.orientation {
        Orientation::Cocartesian => sf.fib.clone(),
        Orientation::Cartesian => fibration_opfibration_convert(&sf.fib)?,
    };
    let q_cart = fibration_opfibration_convert(&qq)?;
    let pushed_cart = fibration_opfibration_convert(&out.output.fib)?;
    let x_dom = compose_functors(&sf.extension, &qq.functor)?;
    for (i, case) in cases.iter().enumerate() {
        let scope = format!("case {i}");
        let outcome = (|| -> Result<Option<String>> {
            let problem = Square::new(
                case.left.refl.section.clone(),
                out.output.fib.functor.clone(),
                case.top.clone(),
                case.bottom.clone(),
            )?;
            // the problem must live in the slice over B
            let w = &case.left.extension;
            if compose_functors(&out.pf_dom.projection, &case.top)? != case.left.dom_extension() {
                return Err(Error::ExtensionMismatch("problem top is not over B".into()));
            }
            if compose_functors(&out.pf_cod.projection, &case.bottom)? != *w {
                return Err(Error::ExtensionMismatch("problem bottom is not over B".into()));
            }
            // pipeline A: the pushforward's own canonical lift
            let direct = crate::lifting::canonical_lift(&case.left.refl, &pushed_cart, &problem)?;

            // pipeline B: transpose across P* -| P_*, apply the Frobenius
            // structure, lift over the total of P, transpose back
            let t = frobenius_transport(p, &case.left)?;
            let pulled_wr = pullback_object(&p.functor, &case.left.dom_extension())?;
            let pulled_w = pullback_object(&p.functor, w)?;
            let pulled_pf_dom = pullback_object(&p.functor, &out.pf_dom.projection)?;
            let pulled_pf_cod = pullback_object(&p.functor, &out.pf_cod.projection)?;
            let pu = crate::transport::pulled_back_map(&pulled_wr, &pulled_pf_dom, &case.top);
            let eps_dom = slice_counit(p, &x_dom, &out.pf_dom, &pulled_pf_dom)?;
            let u_bar = compose_functors(&eps_dom, &pu)?;
            let pv = crate::transport::pulled_back_map(&pulled_w, &pulled_pf_cod, &case.bottom);
            let eps_cod = slice_counit(p, &sf.extension, &out.pf_cod, &pulled_pf_cod)?;
            let v_bar = compose_functors(&eps_cod, &pv)?;
            let transposed = Square::new(t.output.refl.section.clone(), q_cart.functor.clone(), u_bar, v_bar)?;
            let psi = crate::lifting::canonical_lift(&t.output.refl, &q_cart, &transposed)?;
            let back = transpose_over_to(p, w, &pulled_w, &out.pf_dom, &psi)?;
            if back == direct {
                Ok(None)
            } else {
                Ok(Some("transposed filler differs from the direct one".to_string()))
            }
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => rep.push("theorem_witness", format!("{scope}: {w}")),
            Err(e) => rep.push("theorem_witness.error", format!("{scope}: {e}")),
        }
    }
    Ok(rep)
}

/// The Beck--Chevalley check: for a pullback square `(X, Y) : P -> Q` of
/// split opfibrations commuting with the cleavages, and every sliced
/// reflection `(r, U)` over `B`, the component equality
/// `X((U theta_e)_! a) = (Y U theta_e)_! (X a)` holds and the alpha
/// component square is a morphism of split reflections.
pub fn beck_chevalley_check(
    square: &Square,
    p: &SplitFibration,
    q: &SplitFibration,
    corpus: &[SlicedReflection],
) -> Result<ValidationReport> {
    if square.left != p.functor || square.right != q.functor {
        return Err(Error::KindMismatch("beck_chevalley_check: square legs do not match the fibrations".into()));
    }
    if !crate::transport::is_pullback_square(square)? {
        return Err(Error::NotAPullback("beck_chevalley_check: square is not a pullback".into()));
    }
    let compat = check_structured_square(&StructuredSquare::Fibration {
        square: square.clone(),
        left: p.clone(),
        right: q.clone(),
    })?;
    if !compat.ok() {
        return Err(Error::CleavageIncompatible(format!("{}", compat.violations[0])));
    }
    let (x_top, y_bottom) = (&square.top, &square.bottom);
    let mut rep = ValidationReport::new();
    for (i, sr) in corpus.iter().enumerate() {
        let scope = format!("case {i}");
        if sr.base() != p.base() {
            rep.push("bc.case", format!("{scope}: reflection not sliced over the base of P"));
            continue;
        }
        // pointwise component equality
        let u = &sr.extension;
        let refl = &sr.refl;
        for a in &p.total().objects {
            for e in &u.source.objects {
                if p.functor.apply_obj(a) != u.apply_obj(e) {
                    continue;
                }
                let u_theta = u.apply_mor(refl.unit_at(e)).to_string();
                let lhs = x_top.apply_obj(p.total().cod(p.lift(a, &u_theta)));
                let y_u_theta = y_bottom.apply_mor(&u_theta).to_string();
                let rhs = q.total().cod(q.lift(x_top.apply_obj(a), &y_u_theta));
                if lhs != rhs {
                    rep.push(
                        "bc.component",
                        format!("{scope}: X((U theta_{e})_! {a}) = {lhs} != (Y U theta_{e})_! X {a} = {rhs}"),
                    );
                }
            }
        }
        // alpha component square is a reflection morphism
        let t_p = frobenius_transport(p, sr)?;
        let pushed = SlicedReflection { refl: refl.clone(), extension: compose_functors(y_bottom, u)? };
        let t_q = frobenius_transport(q, &pushed)?;
        let alpha_top = Functor::from_maps(
            t_p.output.refl.dom_cat(),
            t_q.output.refl.dom_cat(),
            |o| {
                let (a, x) = split_pair_name(o).expect("pullback object");
                pair_name(x_top.apply_obj(a), x)
            },
            |m| {
                let (a, x) = split_pair_name(m).expect("pullback morphism");
                pair_name(x_top.apply_mor(a), x)
            },
        );
        let alpha_bottom = Functor::from_maps(
            t_p.output.refl.cod_cat(),
            t_q.output.refl.cod_cat(),
            |o| {
                let (a, y) = split_pair_name(o).expect("pullback object");
                pair_name(x_top.apply_obj(a), y)
            },
            |m| {
                let (a, y) = split_pair_name(m).expect("pullback morphism");
                pair_name(x_top.apply_mor(a), y)
            },
        );
        let outcome = (|| -> Result<ValidationReport> {
            let sq = Square::new(
                t_p.output.refl.section.clone(),
                t_q.output.refl.section.clone(),
                alpha_top,
                alpha_bottom,
            )?;
            check_structured_square(&StructuredSquare::Reflection {
                square: sq,
                left: t_p.output.refl.clone(),
                right: t_q.output.refl.clone(),
            })
        })();
        match outcome {
            Ok(r) => rep.merge_scoped(&format!("{scope}.alpha"), r),
            Err(e) => rep.push("bc.alpha_square", format!("{scope}: {e}")),
        }
    }
    Ok(rep)
}

