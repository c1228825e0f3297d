//! The JSON fixture format: a fixed schema with sorted keys, LF newlines and
//! UTF-8, so that parse followed by serialize is the canonical normalizer.
//!
//! Composition entries are triples `[g, f, g.f]`, meaning "apply `f` then
//! `g`".

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use awfslab_core::cat::{FinCategory, Functor, Morphism, NatTransformation};
use awfslab_core::structured::{Orientation, SplitFibration, SplitReflection};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapsDoc {
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub source: CategoryDoc,
    pub target: CategoryDoc,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatDoc {
    pub source: FunctorDoc,
    pub target: FunctorDoc,
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDoc {
    pub object: String,
    pub base_morphism: String,
    pub lift: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub total: CategoryDoc,
    pub base: CategoryDoc,
    pub orientation: String,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
    pub lifts: Vec<LiftDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionDoc {
    pub dom: CategoryDoc,
    pub cod: CategoryDoc,
    pub section: MapsDoc,
    pub retraction: MapsDoc,
    pub unit: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub left: FunctorDoc,
    pub right: FunctorDoc,
    pub top: MapsDoc,
    pub bottom: MapsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentDoc {
    pub context: CategoryDoc,
    #[serde(rename = "type")]
    pub ty: JudgmentTypeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<MapsDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentTypeDoc {
    pub total: CategoryDoc,
    pub orientation: String,
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
    pub lifts: Vec<LiftDoc>,
}

/// A fixture file: the kind tag plus the payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FixtureDoc {
    Category(CategoryDoc),
    Functor(FunctorDoc),
    Nat(NatDoc),
    Fibration(FibrationDoc),
    Reflection(ReflectionDoc),
    Square(SquareDoc),
    Judgment(JudgmentDoc),
}

/// The parsed value of a fixture.
#[derive(Debug, Clone, PartialEq)]
pub enum FixtureValue {
    Category(FinCategory),
    Functor(Functor),
    Nat(NatTransformation),
    Fibration(SplitFibration),
    Reflection(SplitReflection),
    Square(awfslab_core::squares::Square),
    Judgment(Judgment),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Judgment {
    pub context: FinCategory,
    pub ty: SplitFibration,
    pub term: Option<Functor>,
}

/// A parsed fixture with its provenance.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub doc: FixtureDoc,
    pub value: FixtureValue,
    pub provenance: String,
}

impl FixtureValue {
    pub fn kind(&self) -> &'static str {
        match self {
            FixtureValue::Category(_) => "category",
            FixtureValue::Functor(_) => "functor",
            FixtureValue::Nat(_) => "nat",
            FixtureValue::Fibration(_) => "fibration",
            FixtureValue::Reflection(_) => "reflection",
            FixtureValue::Square(_) => "square",
            FixtureValue::Judgment(_) => "judgment",
        }
    }
}

// ---- doc <-> core conversions -------------------------------------------

pub fn category_to_doc(c: &FinCategory) -> CategoryDoc {
    let mut composition: Vec<[String; 3]> = c
        .composition
        .iter()
        .map(|((g, f), gf)| [g.clone(), f.clone(), gf.clone()])
        .collect();
    composition.sort();
    CategoryDoc {
        objects: c.objects.clone(),
        morphisms: c
            .morphisms
            .iter()
            .map(|m| MorphismDoc { name: m.name.clone(), dom: m.dom.clone(), cod: m.cod.clone() })
            .collect(),
        identities: c.identities.clone(),
        composition,
        inverses: c.inverses.clone(),
    }
}

pub fn category_from_doc(doc: &CategoryDoc) -> Result<FinCategory, CliError> {
    let cat = FinCategory::new(
        doc.objects.clone(),
        doc.morphisms.iter().map(|m| Morphism::new(m.name.clone(), m.dom.clone(), m.cod.clone())).collect(),
        doc.identities.clone(),
        doc.composition.iter().map(|[g, f, gf]| ((g.clone(), f.clone()), gf.clone())).collect(),
        doc.inverses.clone(),
    );
    cat.check_tables().map_err(schema_err("category"))?;
    Ok(cat)
}

pub fn functor_to_doc(f: &Functor) -> FunctorDoc {
    FunctorDoc {
        source: category_to_doc(&f.source),
        target: category_to_doc(&f.target),
        object_map: f.object_map.clone(),
        morphism_map: f.morphism_map.clone(),
    }
}

pub fn functor_from_doc(doc: &FunctorDoc) -> Result<Functor, CliError> {
    let source = category_from_doc(&doc.source)?;
    let target = category_from_doc(&doc.target)?;
    let f = Functor::new(source, target, doc.object_map.clone(), doc.morphism_map.clone());
    f.validate().map_err(schema_err("functor"))?;
    Ok(f)
}

fn maps_to_doc(f: &Functor) -> MapsDoc {
    MapsDoc { object_map: f.object_map.clone(), morphism_map: f.morphism_map.clone() }
}

fn maps_from_doc(doc: &MapsDoc, source: &FinCategory, target: &FinCategory, field: &str) -> Result<Functor, CliError> {
    let f = Functor::new(source.clone(), target.clone(), doc.object_map.clone(), doc.morphism_map.clone());
    f.validate().map_err(schema_err(field))?;
    Ok(f)
}

pub fn nat_to_doc(n: &NatTransformation) -> NatDoc {
    NatDoc { source: functor_to_doc(&n.source), target: functor_to_doc(&n.target), components: n.components.clone() }
}

pub fn nat_from_doc(doc: &NatDoc) -> Result<NatTransformation, CliError> {
    let n = NatTransformation::new(functor_from_doc(&doc.source)?, functor_from_doc(&doc.target)?, doc.components.clone());
    n.validate().map_err(schema_err("nat"))?;
    Ok(n)
}

fn orientation_to_str(o: Orientation) -> &'static str {
    match o {
        Orientation::Cartesian => "cartesian",
        Orientation::Cocartesian => "cocartesian",
    }
}

fn orientation_from_str(s: &str) -> Result<Orientation, CliError> {
    match s {
        "cartesian" => Ok(Orientation::Cartesian),
        "cocartesian" => Ok(Orientation::Cocartesian),
        other => Err(CliError::Schema { field: "orientation".into(), msg: format!("unknown orientation {other}") }),
    }
}

pub fn fibration_to_doc(f: &SplitFibration) -> FibrationDoc {
    let mut lifts: Vec<LiftDoc> = f
        .cleavage
        .iter()
        .map(|((e, m), l)| LiftDoc { object: e.clone(), base_morphism: m.clone(), lift: l.clone() })
        .collect();
    lifts.sort_by(|a, b| (&a.object, &a.base_morphism).cmp(&(&b.object, &b.base_morphism)));
    FibrationDoc {
        total: category_to_doc(f.total()),
        base: category_to_doc(f.base()),
        orientation: orientation_to_str(f.orientation).to_string(),
        object_map: f.functor.object_map.clone(),
        morphism_map: f.functor.morphism_map.clone(),
        lifts,
    }
}

pub fn fibration_from_doc(doc: &FibrationDoc) -> Result<SplitFibration, CliError> {
    let total = category_from_doc(&doc.total)?;
    let base = category_from_doc(&doc.base)?;
    let functor = Functor::new(total, base, doc.object_map.clone(), doc.morphism_map.clone());
    functor.validate().map_err(schema_err("fibration"))?;
    let cleavage = doc
        .lifts
        .iter()
        .map(|l| ((l.object.clone(), l.base_morphism.clone()), l.lift.clone()))
        .collect();
    Ok(SplitFibration { functor, orientation: orientation_from_str(&doc.orientation)?, cleavage })
}

pub fn reflection_to_doc(r: &SplitReflection) -> ReflectionDoc {
    ReflectionDoc {
        dom: category_to_doc(r.dom_cat()),
        cod: category_to_doc(r.cod_cat()),
        section: maps_to_doc(&r.section),
        retraction: maps_to_doc(&r.retraction),
        unit: r.unit.components.clone(),
    }
}

pub fn reflection_from_doc(doc: &ReflectionDoc) -> Result<SplitReflection, CliError> {
    let dom = category_from_doc(&doc.dom)?;
    let cod = category_from_doc(&doc.cod)?;
    let section = maps_from_doc(&doc.section, &dom, &cod, "section")?;
    let retraction = maps_from_doc(&doc.retraction, &cod, &dom, "retraction")?;
    let rl = awfslab_core::cat::compose_functors(&section, &retraction).map_err(schema_err("unit"))?;
    let unit = NatTransformation::new(Functor::identity(&cod), rl, doc.unit.clone());
    unit.validate().map_err(schema_err("unit"))?;
    Ok(SplitReflection { section, retraction, unit })
}

pub fn square_to_doc(s: &awfslab_core::squares::Square) -> SquareDoc {
    SquareDoc {
        left: functor_to_doc(&s.left),
        right: functor_to_doc(&s.right),
        top: maps_to_doc(&s.top),
        bottom: maps_to_doc(&s.bottom),
    }
}

pub fn square_from_doc(doc: &SquareDoc) -> Result<awfslab_core::squares::Square, CliError> {
    let left = functor_from_doc(&doc.left)?;
    let right = functor_from_doc(&doc.right)?;
    let top = maps_from_doc(&doc.top, &left.source, &right.source, "top")?;
    let bottom = maps_from_doc(&doc.bottom, &left.target, &right.target, "bottom")?;
    awfslab_core::squares::Square::new(left, right, top, bottom).map_err(schema_err("square"))
}

pub fn judgment_to_doc(j: &Judgment) -> JudgmentDoc {
    let mut lifts: Vec<LiftDoc> = j
        .ty
        .cleavage
        .iter()
        .map(|((e, m), l)| LiftDoc { object: e.clone(), base_morphism: m.clone(), lift: l.clone() })
        .collect();
    lifts.sort_by(|a, b| (&a.object, &a.base_morphism).cmp(&(&b.object, &b.base_morphism)));
    JudgmentDoc {
        context: category_to_doc(&j.context),
        ty: JudgmentTypeDoc {
            total: category_to_doc(j.ty.total()),
            orientation: orientation_to_str(j.ty.orientation).to_string(),
            object_map: j.ty.functor.object_map.clone(),
            morphism_map: j.ty.functor.morphism_map.clone(),
            lifts,
        },
        term: j.term.as_ref().map(maps_to_doc),
    }
}

pub fn judgment_from_doc(doc: &JudgmentDoc) -> Result<Judgment, CliError> {
    let context = category_from_doc(&doc.context)?;
    let total = category_from_doc(&doc.ty.total)?;
    let functor = Functor::new(total.clone(), context.clone(), doc.ty.object_map.clone(), doc.ty.morphism_map.clone());
    functor.validate().map_err(schema_err("type"))?;
    let ty = SplitFibration {
        functor,
        orientation: orientation_from_str(&doc.ty.orientation)?,
        cleavage: doc
            .ty
            .lifts
            .iter()
            .map(|l| ((l.object.clone(), l.base_morphism.clone()), l.lift.clone()))
            .collect(),
    };
    let term = match &doc.term {
        Some(m) => Some(maps_from_doc(m, &context, &total, "term")?),
        None => None,
    };
    Ok(Judgment { context, ty, term })
}

pub fn value_to_doc(v: &FixtureValue) -> FixtureDoc {
    match v {
        FixtureValue::Category(c) => FixtureDoc::Category(category_to_doc(c)),
        FixtureValue::Functor(f) => FixtureDoc::Functor(functor_to_doc(f)),
        FixtureValue::Nat(n) => FixtureDoc::Nat(nat_to_doc(n)),
        FixtureValue::Fibration(f) => FixtureDoc::Fibration(fibration_to_doc(f)),
        FixtureValue::Reflection(r) => FixtureDoc::Reflection(reflection_to_doc(r)),
        FixtureValue::Square(s) => FixtureDoc::Square(square_to_doc(s)),
        FixtureValue::Judgment(j) => FixtureDoc::Judgment(judgment_to_doc(j)),
    }
}

pub fn value_from_doc(doc: &FixtureDoc) -> Result<FixtureValue, CliError> {
    Ok(match doc {
        FixtureDoc::Category(d) => FixtureValue::Category(category_from_doc(d)?),
        FixtureDoc::Functor(d) => FixtureValue::Functor(functor_from_doc(d)?),
        FixtureDoc::Nat(d) => FixtureValue::Nat(nat_from_doc(d)?),
        FixtureDoc::Fibration(d) => FixtureValue::Fibration(fibration_from_doc(d)?),
        FixtureDoc::Reflection(d) => FixtureValue::Reflection(reflection_from_doc(d)?),
        FixtureDoc::Square(d) => FixtureValue::Square(square_from_doc(d)?),
        FixtureDoc::Judgment(d) => FixtureValue::Judgment(judgment_from_doc(d)?),
    })
}

fn schema_err(field: &str) -> impl Fn(awfslab_core::Error) -> CliError + '_ {
    move |e| CliError::Schema { field: field.to_string(), msg: e.to_string() }
}

// ---- byte-level parse and serialize --------------------------------------

/// Canonical serialization: two-space pretty JSON, sorted keys (all maps are
/// ordered), with a trailing newline.
pub fn serialize(value: &FixtureValue) -> Vec<u8> {
    let doc = value_to_doc(value);
    let mut out = serde_json::to_vec_pretty(&doc).expect("fixture serialization cannot fail");
    out.push(b'\n');
    out
}

/// Parse a fixture from bytes, reporting line/column on malformed JSON and
/// the offending field on schema violations.
pub fn parse(bytes: &[u8], provenance: &str) -> Result<Fixture, CliError> {
    let doc: FixtureDoc = serde_json::from_slice(bytes).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let value = value_from_doc(&doc)?;
    Ok(Fixture { doc, value, provenance: provenance.to_string() })
}

pub fn parse_file(path: &Path) -> Result<Fixture, CliError> {
    let bytes = std::fs::read(path)?;
    parse(&bytes, &path.display().to_string())
}

pub fn write_file(path: &Path, value: &FixtureValue) -> Result<(), CliError> {
    std::fs::write(path, serialize(value))?;
    Ok(())
}
