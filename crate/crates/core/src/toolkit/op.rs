//! The opposite triangulated category.
//!
//! Objects and representatives are shared with the inner instance; source
//! and target swap, composition reverses and `Σ_op = Σ⁻¹`. A candidate
//! `(f, g, h)` in the opposite category is a triangle exactly when
//! `(h, g, f)` is one in the inner category.

use crate::category::{Biproduct, CatError, HomSpace, Octahedron, Triangle, Triangulated};
use crate::linalg::{ExactMatrix, Field, FieldElement};

#[derive(Clone, Debug)]
pub struct Op<I>(pub I);

impl<I: Triangulated> Op<I> {
    pub fn inner(&self) -> &I {
        &self.0
    }

    /// Reads an opposite triangle as a triangle of the inner category.
    pub fn to_inner(t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
        Triangle::new(t.h.clone(), t.g.clone(), t.f.clone())
    }
}

impl<I: Triangulated> Triangulated for Op<I> {
    type Obj = I::Obj;
    type Mor = I::Mor;

    fn name(&self) -> String {
        format!("opposite of {}", self.0.name())
    }

    fn field(&self) -> Field {
        self.0.field()
    }

    fn display_obj(&self, x: &I::Obj) -> String {
        self.0.display_obj(x)
    }

    fn source(&self, f: &I::Mor) -> I::Obj {
        self.0.target(f)
    }

    fn target(&self, f: &I::Mor) -> I::Obj {
        self.0.source(f)
    }

    fn identity(&self, x: &I::Obj) -> I::Mor {
        self.0.identity(x)
    }

    fn zero(&self, x: &I::Obj, y: &I::Obj) -> I::Mor {
        self.0.zero(y, x)
    }

    fn compose(&self, g: &I::Mor, f: &I::Mor) -> Result<I::Mor, CatError> {
        self.0.compose(f, g)
    }

    fn add(&self, f: &I::Mor, g: &I::Mor) -> Result<I::Mor, CatError> {
        self.0.add(f, g)
    }

    fn negate(&self, f: &I::Mor) -> I::Mor {
        self.0.negate(f)
    }

    fn scale(&self, c: &FieldElement, f: &I::Mor) -> I::Mor {
        self.0.scale(c, f)
    }

    fn suspend_obj(&self, x: &I::Obj) -> I::Obj {
        self.0.desuspend_obj(x)
    }

    fn suspend_mor(&self, f: &I::Mor) -> I::Mor {
        self.0.desuspend_mor(f)
    }

    fn desuspend_obj(&self, x: &I::Obj) -> I::Obj {
        self.0.suspend_obj(x)
    }

    fn desuspend_mor(&self, f: &I::Mor) -> I::Mor {
        self.0.suspend_mor(f)
    }

    fn zero_object(&self) -> I::Obj {
        self.0.zero_object()
    }

    fn biproduct(&self, x: &I::Obj, y: &I::Obj) -> Biproduct<I::Obj, I::Mor> {
        let b = self.0.biproduct(x, y);
        Biproduct { object: b.object, i1: b.p1, i2: b.p2, p1: b.i1, p2: b.i2 }
    }

    /// For inner `f: Y → X` with cone `(f, i, p)`, the opposite cone is
    /// `(f, Σ⁻¹p, Σ⁻¹i)`.
    fn cone(&self, f: &I::Mor) -> Triangle<I::Mor> {
        let c = self.0.cone(f);
        Triangle::new(f.clone(), self.0.desuspend_mor(&c.h), self.0.desuspend_mor(&c.g))
    }

    /// Desuspends the inner octahedron on the reversed pair: with inner
    /// `Z --g--> Y --f--> X` and outputs `(k, k', k'')`, the opposite maps are
    /// `Σ⁻¹k'` and `Σ⁻¹k`.
    fn octahedron(&self, f: &I::Mor, g: &I::Mor) -> Result<Octahedron<I::Mor>, CatError> {
        let inner = self.0.octahedron(g, f)?;
        let first = self.cone(f);
        let second = self.cone(g);
        let composite = self.cone(&self.compose(g, f)?);
        let k = self.0.desuspend_mor(&inner.k1);
        let k1 = self.0.desuspend_mor(&inner.k);
        let k2 = self.compose(&self.suspend_mor(&first.g), &second.h)?;
        Ok(Octahedron { first, second, composite, k, k1, k2 })
    }

    fn mor_equal(&self, f: &I::Mor, g: &I::Mor) -> bool {
        self.0.mor_equal(f, g)
    }

    fn hom_space(&self, x: &I::Obj, y: &I::Obj) -> HomSpace<I::Mor> {
        self.0.hom_space(y, x)
    }

    fn flatten(&self, f: &I::Mor) -> ExactMatrix {
        self.0.flatten(f)
    }

    fn obj_iso(&self, x: &I::Obj, y: &I::Obj) -> Option<(I::Mor, I::Mor)> {
        self.0.obj_iso(y, x)
    }

    fn is_triangle(&self, t: &Triangle<I::Mor>) -> bool {
        crate::category::check_candidate(self, t).is_ok() && self.0.is_triangle(&Self::to_inner(t))
    }

    fn inverse(&self, f: &I::Mor) -> Option<I::Mor> {
        self.0.inverse(f)
    }

    fn is_zero_object(&self, x: &I::Obj) -> bool {
        self.0.is_zero_object(x)
    }
}
