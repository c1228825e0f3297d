//! Lifting operations as data: the canonical filler assignment for the pair
//! (split reflection, split fibration), the horizontal and vertical law
//! checkers that make such an assignment (double-)categorical, and slicing.
//!
//! The canonical operation solves `(X, Y) : R -> P` by taking, at each
//! object `d`, the chosen cartesian lift of `Y theta_d` with codomain
//! `X L d`; its domain is `phi(d)` and the action on morphisms is induced by
//! the cartesian universal property. `phi.R = X` follows from
//! `theta_{R c} = 1` and the splitting lifting identities to identities.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cat::{compose_functors, FinCategory, Functor};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::squares::{SliceMorphism, Square};
use crate::structured::{
    check_structured_square, compose_split_fibrations, compose_split_reflections, Orientation, SplitFibration,
    SplitReflection, StructuredSquare,
};

/// A coherent assignment of diagonal fillers to lifting problems between
/// split reflections and split fibrations, with metadata naming the
/// structured classes it is defined for.
pub struct LiftingOperation {
    pub left_class: String,
    pub right_class: String,
    assign: Box<dyn Fn(&SplitReflection, &SplitFibration, &Square) -> Result<Functor> + Send + Sync>,
}

impl LiftingOperation {
    pub fn new(
        left_class: impl Into<String>,
        right_class: impl Into<String>,
        assign: impl Fn(&SplitReflection, &SplitFibration, &Square) -> Result<Functor> + Send + Sync + 'static,
    ) -> Self {
        LiftingOperation { left_class: left_class.into(), right_class: right_class.into(), assign: Box::new(assign) }
    }

    /// The canonical operation of [`canonical_lift`].
    pub fn canonical() -> Self {
        LiftingOperation::new("SplRef", "SplFib", |l, r, s| canonical_lift(l, r, s))
    }

    pub fn apply(&self, left: &SplitReflection, right: &SplitFibration, problem: &Square) -> Result<Functor> {
        (self.assign)(left, right, problem)
    }
}

/// Solve the lifting problem `(X, Y) : R -> P` of a split reflection against
/// a cartesian split fibration.
///
/// The filler satisfies `P.phi = Y` and `phi.R = X`, both table-checked
/// before returning.
pub fn canonical_lift(sr: &SplitReflection, sf: &SplitFibration, problem: &Square) -> Result<Functor> {
    if sf.orientation != Orientation::Cartesian {
        return Err(Error::OrientationMismatch("canonical_lift needs a cartesian fibration".into()));
    }
    if problem.left != sr.section || problem.right != sf.functor {
        return Err(Error::BoundaryMismatch("canonical_lift: problem legs do not match the witnesses".into()));
    }
    let d_cat = sr.cod_cat();
    let total = sf.total();
    let x = &problem.top;
    let y = &problem.bottom;

    // phi(d) = dom of the chosen lift of Y(theta_d) with codomain X(L d)
    let mut object_map: BTreeMap<String, String> = BTreeMap::new();
    let mut lifts: BTreeMap<String, String> = BTreeMap::new();
    for d in &d_cat.objects {
        let theta = sr.unit_at(d);
        let y_theta = y.apply_mor(theta);
        let xld = x.apply_obj(sr.retraction.apply_obj(d));
        let l = sf.lift(xld, y_theta).to_string();
        object_map.insert(d.clone(), total.dom(&l).to_string());
        lifts.insert(d.clone(), l);
    }
    // phi(delta) is the unique morphism over Y(delta) with
    // lift_{d'} . phi(delta) = X L(delta) . lift_d.
    let mut morphism_map: BTreeMap<String, String> = BTreeMap::new();
    for m in &d_cat.morphisms {
        let ld = &lifts[&m.dom];
        let ld2 = &lifts[&m.cod];
        let xlm = x.apply_mor(sr.retraction.apply_mor(&m.name));
        let g = total.compose(xlm, ld).to_string();
        let phi_m = sf.cart_factor(ld2, &g, y.apply_mor(&m.name))?;
        morphism_map.insert(m.name.clone(), phi_m);
    }
    let phi = Functor { source: d_cat.clone(), target: total.clone(), object_map, morphism_map };
    if compose_functors(&sf.functor, &phi)? != *y || compose_functors(&phi, &sr.section)? != *x {
        return Err(Error::NonCommutingProblem("canonical_lift: filler failed its triangles".into()));
    }
    Ok(phi)
}

/// One instance of the horizontal coherence law: a problem `(u, v) : f -> g`
/// pre-composed with a structured square `wx : f' -> f` of reflections and
/// post-composed with `yz : g -> g'` of fibrations.
pub struct HorizontalCase {
    pub inner_left: SplitReflection,
    pub inner_right: SplitFibration,
    pub problem: Square,
    pub outer_left: SplitReflection,
    /// `(w, x) : f' -> f`, serially commuting.
    pub left_square: Square,
    pub outer_right: SplitFibration,
    /// `(y, z) : g -> g'`, commuting with cleavages.
    pub right_square: Square,
}

/// Check `y . phi_{f,g}(u, v) . x = phi_{f',g'}(y.u.w, z.v.x)` for every
/// case; violations are reported, not thrown.
pub fn check_horizontal_law(op: &LiftingOperation, corpus: &[HorizontalCase]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for (i, case) in corpus.iter().enumerate() {
        let scope = format!("case {i}");
        let left_ok = check_structured_square(&StructuredSquare::Reflection {
            square: case.left_square.clone(),
            left: case.outer_left.clone(),
            right: case.inner_left.clone(),
        });
        let right_ok = check_structured_square(&StructuredSquare::Fibration {
            square: case.right_square.clone(),
            left: case.inner_right.clone(),
            right: case.outer_right.clone(),
        });
        match (left_ok, right_ok) {
            (Ok(a), Ok(b)) if a.ok() && b.ok() => {}
            _ => {
                rep.push("horizontal.case", format!("{scope}: malformed structured squares"));
                continue;
            }
        }
        let phi = match op.apply(&case.inner_left, &case.inner_right, &case.problem) {
            Ok(p) => p,
            Err(e) => {
                rep.push("horizontal.inner_lift", format!("{scope}: {e}"));
                continue;
            }
        };
        // lhs = y . phi . x
        let lhs = compose_functors(&case.right_square.top, &phi)
            .and_then(|p| compose_functors(&p, &case.left_square.bottom));
        // outer problem: (y.u.w, z.v.x)
        let outer_top = compose_functors(&case.right_square.top, &case.problem.top)
            .and_then(|p| compose_functors(&p, &case.left_square.top));
        let outer_bottom = compose_functors(&case.right_square.bottom, &case.problem.bottom)
            .and_then(|p| compose_functors(&p, &case.left_square.bottom));
        let outcome = (|| -> Result<bool> {
            let outer = Square::new(
                case.outer_left.section.clone(),
                case.outer_right.functor.clone(),
                outer_top?,
                outer_bottom?,
            )?;
            let rhs = op.apply(&case.outer_left, &case.outer_right, &outer)?;
            Ok(lhs? == rhs)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => rep.push("horizontal.law", format!("{scope}: y.phi.x != phi(outer)")),
            Err(e) => rep.push("horizontal.error", format!("{scope}: {e}")),
        }
    }
    rep
}

/// One instance of the vertical coherence law: composable reflections
/// `f' ; f` against composable fibrations `g' ; g`, with a problem
/// `(u, v) : f.f' -> g.g'`.
pub struct VerticalCase {
    /// Upper reflection `f'`.
    pub upper_left: SplitReflection,
    /// Lower reflection `f` (so the composite is `f.f'`).
    pub lower_left: SplitReflection,
    /// Upper fibration `g'`.
    pub upper_right: SplitFibration,
    /// Lower fibration `g` (so the composite is `g.g'`).
    pub lower_right: SplitFibration,
    pub problem: Square,
}

/// Check that the one-step filler of a composite problem equals the pasted
/// two-step filler of eq-style vertical composition.
pub fn check_vertical_law(op: &LiftingOperation, corpus: &[VerticalCase]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for (i, case) in corpus.iter().enumerate() {
        let scope = format!("case {i}");
        let outcome = (|| -> Result<Option<String>> {
            let left = compose_split_reflections(&case.lower_left, &case.upper_left)?;
            let right = compose_split_fibrations(&case.upper_right, &case.lower_right)?;
            let problem = Square::new(
                left.section.clone(),
                right.functor.clone(),
                case.problem.top.clone(),
                case.problem.bottom.clone(),
            )?;
            let one_step = op.apply(&left, &right, &problem)?;
            // phi1 = phi_{f', g.g'}(u, v.f)
            let vf = compose_functors(&case.problem.bottom, &case.lower_left.section)?;
            let p1 = Square::new(case.upper_left.section.clone(), right.functor.clone(), case.problem.top.clone(), vf)?;
            let phi1 = op.apply(&case.upper_left, &right, &p1)?;
            // phi2 = phi_{f.f', g}(g'.u, v)
            let gu = compose_functors(&case.upper_right.functor, &case.problem.top)?;
            let p2 = Square::new(left.section.clone(), case.lower_right.functor.clone(), gu, case.problem.bottom.clone())?;
            let phi2 = op.apply(&left, &case.lower_right, &p2)?;
            // middle square (phi1, phi2) : f -> g' must commute
            let mid = Square::new(case.lower_left.section.clone(), case.upper_right.functor.clone(), phi1, phi2)?;
            let two_step = op.apply(&case.lower_left, &case.upper_right, &mid)?;
            if two_step == one_step {
                Ok(None)
            } else {
                Ok(Some("pasted filler != one-step filler".to_string()))
            }
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => rep.push("vertical.law", format!("{scope}: {w}")),
            Err(e) => rep.push("vertical.error", format!("{scope}: {e}")),
        }
    }
    rep
}

/// A sliced lifting operation: acts on extension-wrapped problems by
/// forgetting the extensions, applying the inner operation, and re-extending
/// the filler by `b.g`.
pub struct SlicedLiftingOperation<'a> {
    pub base: FinCategory,
    pub inner: &'a LiftingOperation,
}

impl<'a> SlicedLiftingOperation<'a> {
    /// Solve a slice problem; the filler is returned as the slice morphism
    /// `(phi, b.g)`.
    pub fn apply(
        &self,
        left: &(SplitReflection, Functor),
        right: &(SplitFibration, Functor),
        problem: &Square,
    ) -> Result<SliceMorphism> {
        let (refl, a) = left;
        let (fib, b) = right;
        if a.source != *refl.cod_cat() || a.target != self.base {
            return Err(Error::ExtensionMismatch("sliced lift: left extension malformed".into()));
        }
        if b.source != *fib.base() || b.target != self.base {
            return Err(Error::ExtensionMismatch("sliced lift: right extension malformed".into()));
        }
        // slice compatibility: b.v = a and (b.g).u = a.f
        let bv = compose_functors(b, &problem.bottom)?;
        if bv != *a {
            return Err(Error::ExtensionMismatch("sliced lift: b.v != a".into()));
        }
        let bg = compose_functors(b, &fib.functor)?;
        let bgu = compose_functors(&bg, &problem.top)?;
        let af = compose_functors(a, &refl.section)?;
        if bgu != af {
            return Err(Error::ExtensionMismatch("sliced lift: (b.g).u != a.f".into()));
        }
        let phi = self.inner.apply(refl, fib, problem)?;
        SliceMorphism::new(phi, bg)
    }
}

/// Wrap a lifting operation for a slice base.
pub fn slice_lifting_operation<'a>(op: &'a LiftingOperation, base: &FinCategory) -> SlicedLiftingOperation<'a> {
    SlicedLiftingOperation { base: base.clone(), inner: op }
}

/// An adversarially incoherent operation: picks a filler from the oracle's
/// enumeration by index. Used to show the law checkers have teeth.
pub fn arbitrary_filler_operation(pick: usize) -> LiftingOperation {
    LiftingOperation::new("SplRef", "SplFib", move |_l, _r, s| {
        let fs = crate::squares::enumerate_fillers(s);
        if fs.fillers.is_empty() {
            return Err(Error::NonCommutingProblem("no filler exists".into()));
        }
        let idx = pick % fs.fillers.len();
        Ok(fs.fillers[idx].clone())
    })
}

/// All fillers of a problem whose legs carry reflection/fibration structure,
/// as plain functors (the slice wrapping adds nothing, since the filler's
/// extension is forced).
pub fn oracle_fillers(problem: &Square) -> Vec<Functor> {
    crate::squares::enumerate_fillers(problem).fillers
}
