//! Seeded corpora for the law checkers and the acceptance suite. Each
//! builder is deterministic in its seed and keeps categories at desk scale
//! (at most 5 objects and 40 morphisms per category by default).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use awfslab_core::cat::{compose_functors, FinCategory, Functor};
use awfslab_core::frobenius::{ReflectionSquareCase, SlicedFibration, SlicedReflection, TheoremWitnessCase};
use awfslab_core::lifting::{HorizontalCase, VerticalCase};
use awfslab_core::squares::{enumerate_functors_over, Square};
use awfslab_core::structured::{
    adjoin_retract, compose_split_reflections, pullback_split_fibration,
    Orientation, SplitFibration, SplitReflection,
};

use crate::gen::{gen_fibration, gen_fibration_over, gen_functor, gen_groupoid, gen_reflection, pick, rng_for};
use crate::CliError;

/// One basic lifting case: a reflection, a cartesian fibration, and a
/// commuting problem between them.
#[derive(Debug, Clone)]
pub struct LiftCase {
    pub refl: SplitReflection,
    pub fib: SplitFibration,
    pub problem: Square,
}

fn problem_between(
    rng: &mut ChaCha8Rng,
    refl: &SplitReflection,
    fib: &SplitFibration,
) -> Result<Option<Square>, CliError> {
    let y = match gen_functor(rng, refl.cod_cat(), fib.base()) {
        Some(y) => y,
        None => return Ok(None),
    };
    let yr = compose_functors(&y, &refl.section).map_err(core_err)?;
    let xs = enumerate_functors_over(&yr, &fib.functor).map_err(core_err)?;
    let x = match pick(rng, &xs) {
        Some(x) => x.clone(),
        None => return Ok(None),
    };
    Ok(Some(Square::new(refl.section.clone(), fib.functor.clone(), x, y).map_err(core_err)?))
}

/// Generate `n` lifting cases (categories <= `max_objects` objects).
pub fn lifting_corpus(seed: u64, n: usize, max_objects: usize) -> Result<Vec<LiftCase>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < n {
        guard += 1;
        if guard > n * 200 {
            return Err(CliError::SizeOutOfRange("could not generate enough lifting cases".into()));
        }
        let refl = gen_reflection(&mut rng, max_objects.min(4))?;
        let fib = gen_fibration(&mut rng, 2, 2, Orientation::Cartesian)?;
        if fib.total().morphisms.len() > 40 {
            continue;
        }
        if let Some(problem) = problem_between(&mut rng, &refl, &fib)? {
            out.push(LiftCase { refl, fib, problem });
        }
    }
    Ok(out)
}

/// Horizontal coherence cases derived from the lifting corpus: the inner
/// problem sits between a retract-extended reflection and a pulled-back
/// fibration, connected to the outer pair by the section inclusion and the
/// pullback square.
pub fn horizontal_corpus(seed: u64, n: usize, max_objects: usize) -> Result<Vec<HorizontalCase>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < n {
        guard += 1;
        if guard > n * 300 {
            return Err(CliError::SizeOutOfRange("could not generate enough horizontal cases".into()));
        }
        let outer_left = gen_reflection(&mut rng, max_objects.min(4))?;
        let outer_right = gen_fibration(&mut rng, 2, 2, Orientation::Cartesian)?;
        // inner left: adjoin one more retract
        let cod = outer_left.cod_cat().clone();
        let target = cod.objects[rng.gen_range(0..cod.objects.len())].clone();
        let bigger = match adjoin_retract(&cod, &target, "h0") {
            Ok(b) => b,
            Err(_) => continue,
        };
        let inner_left = compose_split_reflections(&bigger, &outer_left).map_err(core_err)?;
        let left_square = Square::new(
            outer_left.section.clone(),
            inner_left.section.clone(),
            Functor::identity(outer_left.dom_cat()),
            bigger.section.clone(),
        )
        .map_err(core_err)?;
        // inner right: pull the fibration back along a generated map
        let bprime = gen_groupoid(&mut rng, 2)?;
        let v = match gen_functor(&mut rng, &bprime, outer_right.base()) {
            Some(v) => v,
            None => continue,
        };
        let (inner_right, proj_total) = pullback_split_fibration(&outer_right, &v).map_err(core_err)?;
        let right_square =
            Square::new(inner_right.functor.clone(), outer_right.functor.clone(), proj_total, v).map_err(core_err)?;
        let problem = match problem_between(&mut rng, &inner_left, &inner_right)? {
            Some(p) => p,
            None => continue,
        };
        out.push(HorizontalCase {
            inner_left,
            inner_right,
            problem,
            outer_left,
            left_square,
            outer_right,
            right_square,
        });
    }
    Ok(out)
}

/// Vertical coherence cases: two-stage reflections against two-stage
/// fibrations with a problem for the composites.
pub fn vertical_corpus(seed: u64, n: usize, max_objects: usize) -> Result<Vec<VerticalCase>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < n {
        guard += 1;
        if guard > n * 300 {
            return Err(CliError::SizeOutOfRange("could not generate enough vertical cases".into()));
        }
        let upper_left = gen_reflection(&mut rng, max_objects.min(3))?;
        let cod = upper_left.cod_cat().clone();
        let target = cod.objects[rng.gen_range(0..cod.objects.len())].clone();
        let lower_left = match adjoin_retract(&cod, &target, "v0") {
            Ok(b) => b,
            Err(_) => continue,
        };
        let lower_right = gen_fibration(&mut rng, 2, 2, Orientation::Cartesian)?;
        let upper_right = gen_fibration_over(&mut rng, lower_right.total(), 2, Orientation::Cartesian)?;
        if upper_right.total().morphisms.len() > 40 {
            continue;
        }
        let left = compose_split_reflections(&lower_left, &upper_left).map_err(core_err)?;
        let right = awfslab_core::structured::compose_split_fibrations(&upper_right, &lower_right).map_err(core_err)?;
        let problem = match problem_between(&mut rng, &left, &right)? {
            Some(p) => p,
            None => continue,
        };
        out.push(VerticalCase { upper_left, lower_left, upper_right, lower_right, problem });
    }
    Ok(out)
}

/// Sliced reflections over a given base.
pub fn sliced_reflections_over(
    rng: &mut ChaCha8Rng,
    base: &FinCategory,
    n: usize,
    max_objects: usize,
) -> Result<Vec<SlicedReflection>, CliError> {
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < n {
        guard += 1;
        if guard > n * 200 {
            return Err(CliError::SizeOutOfRange("could not generate enough sliced reflections".into()));
        }
        let refl = gen_reflection(rng, max_objects.min(4))?;
        if let Some(ext) = gen_functor(rng, refl.cod_cat(), base) {
            out.push(SlicedReflection::new(refl, ext).map_err(core_err)?);
        }
    }
    Ok(out)
}

/// A Frobenius fixture: a cocartesian fibration with sliced reflections
/// over its base, plus square and composition cases.
pub struct FrobeniusCorpus {
    pub fibration: SplitFibration,
    pub reflections: Vec<SlicedReflection>,
    pub squares: Vec<ReflectionSquareCase>,
    pub towers: Vec<(SlicedReflection, SlicedReflection)>,
}

pub fn frobenius_corpus(seed: u64, n: usize, max_objects: usize) -> Result<FrobeniusCorpus, CliError> {
    let mut rng = rng_for(seed);
    let fibration = gen_fibration(&mut rng, 2, 2, Orientation::Cocartesian)?;
    let base = fibration.base().clone();
    let reflections = sliced_reflections_over(&mut rng, &base, n, max_objects)?;
    // square cases: (1, section) from a reflection into its retract
    // extension, with the small extension derived so the slice triangle
    // commutes on the nose
    let mut squares = Vec::new();
    let mut guard = 0usize;
    while squares.len() < n && guard < n * 200 {
        guard += 1;
        let refl = gen_reflection(&mut rng, max_objects.min(3))?;
        let cod = refl.cod_cat().clone();
        let target = cod.objects[rng.gen_range(0..cod.objects.len())].clone();
        let bigger = match adjoin_retract(&cod, &target, "f0") {
            Ok(b) => b,
            Err(_) => continue,
        };
        let ext_big = match gen_functor(&mut rng, bigger.cod_cat(), &base) {
            Some(e) => e,
            None => continue,
        };
        let right = SlicedReflection::new(
            compose_split_reflections(&bigger, &refl).map_err(core_err)?,
            ext_big.clone(),
        )
        .map_err(core_err)?;
        let left = SlicedReflection::new(refl, compose_functors(&ext_big, &bigger.section).map_err(core_err)?)
            .map_err(core_err)?;
        squares.push(ReflectionSquareCase {
            top: Functor::identity(left.refl.dom_cat()),
            bottom: bigger.section.clone(),
            left,
            right,
        });
    }
    // towers: iterated retracts with derived extensions
    let mut towers = Vec::new();
    let mut guard = 0usize;
    while towers.len() < n && guard < n * 200 {
        guard += 1;
        let r1 = gen_reflection(&mut rng, max_objects.min(3))?;
        let c1 = r1.cod_cat().clone();
        let target = c1.objects[rng.gen_range(0..c1.objects.len())].clone();
        let r2 = match adjoin_retract(&c1, &target, "t0") {
            Ok(r) => r,
            Err(_) => continue,
        };
        if let Some(ext2) = gen_functor(&mut rng, r2.cod_cat(), &base) {
            let lower = SlicedReflection::new(r2, ext2).map_err(core_err)?;
            let upper = SlicedReflection::new(r1, lower.dom_extension()).map_err(core_err)?;
            towers.push((upper, lower));
        }
    }
    Ok(FrobeniusCorpus { fibration, reflections, squares, towers })
}

/// Pairs (y over the base, x over the total) for the adjunction oracle.
pub fn adjunction_corpus(
    seed: u64,
    n: usize,
) -> Result<Vec<(SplitFibration, Vec<(Functor, Functor)>)>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let fib = gen_fibration(&mut rng, 2, 2, Orientation::Cocartesian)?;
        // keep the enumeration tame
        if fib.total().objects.len() > 6 || fib.total().morphisms.len() > 24 {
            continue;
        }
        let y_src = gen_groupoid(&mut rng, 2)?;
        let x_src = gen_groupoid(&mut rng, 2)?;
        let y = match gen_functor(&mut rng, &y_src, fib.base()) {
            Some(y) => y,
            None => continue,
        };
        let x = match gen_functor(&mut rng, &x_src, fib.total()) {
            Some(x) => x,
            None => continue,
        };
        out.push((fib, vec![(y, x)]));
    }
    Ok(out)
}

/// A theorem-witness fixture: a fibration `P`, a sliced fibration over its
/// total, and generated lifting problems against the pushforward.
pub struct WitnessCorpus {
    pub p: SplitFibration,
    pub sf: SlicedFibration,
    pub cases: Vec<TheoremWitnessCase>,
}

pub fn witness_corpus(seed: u64, n_problems: usize) -> Result<Vec<WitnessCorpus>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    let mut total_problems = 0usize;
    let mut guard = 0usize;
    while total_problems < n_problems {
        guard += 1;
        if guard > 200 {
            return Err(CliError::SizeOutOfRange("could not generate enough witness problems".into()));
        }
        let p = gen_fibration(&mut rng, 2, 2, Orientation::Cocartesian)?;
        if p.total().objects.len() > 4 {
            continue;
        }
        let q = gen_fibration_over(&mut rng, p.total(), 2, Orientation::Cocartesian)?;
        if q.total().objects.len() > 6 {
            continue;
        }
        let sf = SlicedFibration::new(q, Functor::identity(p.total())).map_err(core_err)?;
        let outp = match awfslab_core::frobenius::pushforward_structure(&p, &sf) {
            Ok(o) => o,
            Err(_) => continue,
        };
        if outp.pf_dom.total.objects.len() > 8 || outp.pf_dom.total.morphisms.len() > 40 {
            continue;
        }
        let mut cases = Vec::new();
        let mut attempts = 0usize;
        while cases.len() < 4 && attempts < 40 {
            attempts += 1;
            let refl = gen_reflection(&mut rng, 3)?;
            let w = match gen_functor(&mut rng, refl.cod_cat(), p.base()) {
                Some(w) => w,
                None => continue,
            };
            let left = SlicedReflection::new(refl, w).map_err(core_err)?;
            // bottom: a functor over B into the pushed codomain total
            let vs = enumerate_functors_over(&left.extension, &outp.pf_cod.projection).map_err(core_err)?;
            let v = match pick(&mut rng, &vs) {
                Some(v) => v.clone(),
                None => continue,
            };
            // top: fill u with P_* q . u = v . section over the domain ext
            let vr = compose_functors(&v, &left.refl.section).map_err(core_err)?;
            let us = enumerate_functors_over(&vr, &outp.output.fib.functor).map_err(core_err)?;
            // additionally u must be over B: projection . u = dom extension
            let dom_ext = left.dom_extension();
            let us_over: Vec<&Functor> = us
                .iter()
                .filter(|u| {
                    compose_functors(&outp.pf_dom.projection, u).map(|c| c == dom_ext).unwrap_or(false)
                })
                .collect();
            let u = match pick(&mut rng, &us_over) {
                Some(u) => (*u).clone(),
                None => continue,
            };
            cases.push(TheoremWitnessCase { left, top: u, bottom: v });
        }
        if cases.is_empty() {
            continue;
        }
        total_problems += cases.len();
        out.push(WitnessCorpus { p, sf, cases });
    }
    Ok(out)
}

/// Structured pullback squares of opfibrations with sliced reflections over
/// the left base, for the Beck--Chevalley checks.
pub struct BcCorpus {
    pub square: Square,
    pub left: SplitFibration,
    pub right: SplitFibration,
    pub reflections: Vec<SlicedReflection>,
}

pub fn bc_corpus(seed: u64, n_squares: usize) -> Result<Vec<BcCorpus>, CliError> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < n_squares {
        guard += 1;
        if guard > n_squares * 100 {
            return Err(CliError::SizeOutOfRange("could not generate enough BC squares".into()));
        }
        let q = gen_fibration(&mut rng, 2, 2, Orientation::Cocartesian)?;
        let bprime = gen_groupoid(&mut rng, 2)?;
        let v = match gen_functor(&mut rng, &bprime, q.base()) {
            Some(v) => v,
            None => continue,
        };
        let (p, proj_total) = pullback_split_fibration(&q, &v).map_err(core_err)?;
        let square = Square::new(p.functor.clone(), q.functor.clone(), proj_total, v).map_err(core_err)?;
        let reflections = sliced_reflections_over(&mut rng, p.base(), 2, 4)?;
        out.push(BcCorpus { square, left: p, right: q, reflections });
    }
    Ok(out)
}

/// An adversarially mutated copy of a fibration: one identity lift rebound
/// to a non-identity endomorphism when one exists.
pub fn mutate_identity_lift(fib: &SplitFibration) -> Option<SplitFibration> {
    let mut out = fib.clone();
    for ((e, f), l) in &fib.cleavage {
        if !fib.base().is_identity(f) {
            continue;
        }
        for cand in fib.total().hom(fib.total().dom(l), fib.total().cod(l)) {
            if cand.name != *l && fib.functor.apply_mor(&cand.name) == f {
                out.cleavage.insert((e.clone(), f.clone()), cand.name.clone());
                return Some(out);
            }
        }
    }
    None
}

/// An adversarially mutated reflection: one unit component rebound so a
/// triangle identity fails, when the category allows it.
pub fn mutate_unit(refl: &SplitReflection) -> Option<SplitReflection> {
    let mut out = refl.clone();
    let cod = refl.cod_cat();
    for d in &cod.objects {
        let current = refl.unit_at(d).to_string();
        let target = cod.cod(&current).to_string();
        for cand in cod.hom(d, &target) {
            if cand.name != current {
                out.unit.components.insert(d.clone(), cand.name.clone());
                return Some(out);
            }
        }
    }
    None
}

fn core_err(e: awfslab_core::Error) -> CliError {
    CliError::Schema { field: "corpus".into(), msg: e.to_string() }
}
