//! Explicit adjunction witnesses between finite categories.

use alloc::format;
use alloc::string::ToString;

use crate::cat::{compose_functors, Functor, NatTransformation};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A fully specified adjunction `F ⊣ G` with unit and counit.
///
/// `left` is `F : C -> D`, `right` is `G : D -> C`, the unit is
/// `1_C => G.F` and the counit `F.G => 1_D`. Triangle identities are checked
/// by [`AdjunctionWitness::validate`], never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionWitness {
    pub left: Functor,
    pub right: Functor,
    pub unit: NatTransformation,
    pub counit: NatTransformation,
}

impl AdjunctionWitness {
    pub fn identity(c: &crate::cat::FinCategory) -> Self {
        let id = Functor::identity(c);
        AdjunctionWitness {
            left: id.clone(),
            right: id.clone(),
            unit: NatTransformation::identity(&id),
            counit: NatTransformation::identity(&id),
        }
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        if self.left.source != self.right.target || self.left.target != self.right.source {
            return Err(Error::BoundaryMismatch("adjunction: F and G are not opposed".into()));
        }
        let gf = compose_functors(&self.right, &self.left)?;
        let fg = compose_functors(&self.left, &self.right)?;
        if self.unit.source != Functor::identity(&self.left.source) || self.unit.target != gf {
            return Err(Error::BoundaryMismatch("adjunction: unit is not 1 => G.F".into()));
        }
        if self.counit.source != fg || self.counit.target != Functor::identity(&self.left.target) {
            return Err(Error::BoundaryMismatch("adjunction: counit is not F.G => 1".into()));
        }
        let mut r = ValidationReport::new();
        r.merge_scoped("unit", self.unit.validate()?);
        r.merge_scoped("counit", self.counit.validate()?);
        let (c, d) = (&self.left.source, &self.left.target);
        // (counit . F) . (F . unit) = 1_F
        for o in &c.objects {
            let fo = self.left.apply_obj(o);
            let lhs = d.try_compose(self.counit.component(fo), self.left.apply_mor(self.unit.component(o)));
            if lhs != Some(d.identity(fo)) {
                r.push("triangle.left", format!("at {o}: {lhs:?} != id_{fo}"));
            }
        }
        // (G . counit) . (unit . G) = 1_G
        for o in &d.objects {
            let go = self.right.apply_obj(o);
            let lhs = c.try_compose(self.right.apply_mor(self.counit.component(o)), self.unit.component(go));
            if lhs != Some(c.identity(go)) {
                r.push("triangle.right", format!("at {o}: {lhs:?} != id_{go}"));
            }
        }
        Ok(r)
    }

    /// Validate and convert any violation into [`Error::AdjunctionInvalid`].
    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate()?;
        if !r.ok() {
            return Err(Error::AdjunctionInvalid(r.violations[0].to_string()));
        }
        Ok(())
    }
}
