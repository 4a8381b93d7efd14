//! Instances with a deliberately corrupted cone, for mutation tests. Every
//! other operation, including the triangle test, is the inner instance's.

use rand_chacha::ChaCha8Rng;
use tricat::category::{Biproduct, CatError, HomSpace, Octahedron, Triangle, Triangulated};
use tricat::linalg::{ExactMatrix, Field, FieldElement};
use tricat::toolkit::Sampler;

type Corruption<I> = fn(&I, Triangle<<I as Triangulated>::Mor>) -> Triangle<<I as Triangulated>::Mor>;

pub struct Mutant<I: Triangulated> {
    pub inner: I,
    pub label: &'static str,
    pub corrupt: Corruption<I>,
}

/// `(f, g, −h)` in place of the cone `(f, g, h)`.
pub fn flip_h<I: Triangulated>(inst: &I, t: Triangle<I::Mor>) -> Triangle<I::Mor> {
    let h = inst.negate(&t.h);
    Triangle::new(t.f, t.g, h)
}

/// The cone with the `−f` block of its differential dropped: `ΣX ⊕ Y` with
/// the plain inclusion and projection.
pub fn drop_f_block<I: Triangulated>(inst: &I, t: Triangle<I::Mor>) -> Triangle<I::Mor> {
    let b = inst.biproduct(&inst.suspend_obj(&inst.source(&t.f)), &inst.target(&t.f));
    Triangle::new(t.f, b.i2, b.p1)
}

pub struct MutantSampler<S>(pub S);

impl<I: Triangulated, S: Sampler<I>> Sampler<Mutant<I>> for MutantSampler<S> {
    fn object(&self, inst: &Mutant<I>, rng: &mut ChaCha8Rng) -> I::Obj {
        self.0.object(&inst.inner, rng)
    }

    fn morphism(&self, inst: &Mutant<I>, x: &I::Obj, y: &I::Obj, rng: &mut ChaCha8Rng) -> I::Mor {
        self.0.morphism(&inst.inner, x, y, rng)
    }

    fn automorphism(&self, inst: &Mutant<I>, x: &I::Obj, rng: &mut ChaCha8Rng) -> (I::Mor, I::Mor) {
        self.0.automorphism(&inst.inner, x, rng)
    }
}

impl<I: Triangulated> Triangulated for Mutant<I> {
    type Obj = I::Obj;
    type Mor = I::Mor;

    fn name(&self) -> String {
        format!("{} ({})", self.inner.name(), self.label)
    }
    fn field(&self) -> Field {
        self.inner.field()
    }
    fn display_obj(&self, x: &I::Obj) -> String {
        self.inner.display_obj(x)
    }
    fn source(&self, f: &I::Mor) -> I::Obj {
        self.inner.source(f)
    }
    fn target(&self, f: &I::Mor) -> I::Obj {
        self.inner.target(f)
    }
    fn identity(&self, x: &I::Obj) -> I::Mor {
        self.inner.identity(x)
    }
    fn zero(&self, x: &I::Obj, y: &I::Obj) -> I::Mor {
        self.inner.zero(x, y)
    }
    fn compose(&self, g: &I::Mor, f: &I::Mor) -> Result<I::Mor, CatError> {
        self.inner.compose(g, f)
    }
    fn add(&self, f: &I::Mor, g: &I::Mor) -> Result<I::Mor, CatError> {
        self.inner.add(f, g)
    }
    fn negate(&self, f: &I::Mor) -> I::Mor {
        self.inner.negate(f)
    }
    fn scale(&self, c: &FieldElement, f: &I::Mor) -> I::Mor {
        self.inner.scale(c, f)
    }
    fn suspend_obj(&self, x: &I::Obj) -> I::Obj {
        self.inner.suspend_obj(x)
    }
    fn suspend_mor(&self, f: &I::Mor) -> I::Mor {
        self.inner.suspend_mor(f)
    }
    fn desuspend_obj(&self, x: &I::Obj) -> I::Obj {
        self.inner.desuspend_obj(x)
    }
    fn desuspend_mor(&self, f: &I::Mor) -> I::Mor {
        self.inner.desuspend_mor(f)
    }
    fn zero_object(&self) -> I::Obj {
        self.inner.zero_object()
    }
    fn biproduct(&self, x: &I::Obj, y: &I::Obj) -> Biproduct<I::Obj, I::Mor> {
        self.inner.biproduct(x, y)
    }
    fn cone(&self, f: &I::Mor) -> Triangle<I::Mor> {
        (self.corrupt)(&self.inner, self.inner.cone(f))
    }
    fn octahedron(&self, f: &I::Mor, g: &I::Mor) -> Result<Octahedron<I::Mor>, CatError> {
        self.inner.octahedron(f, g)
    }
    fn mor_equal(&self, f: &I::Mor, g: &I::Mor) -> bool {
        self.inner.mor_equal(f, g)
    }
    fn hom_space(&self, x: &I::Obj, y: &I::Obj) -> HomSpace<I::Mor> {
        self.inner.hom_space(x, y)
    }
    fn flatten(&self, f: &I::Mor) -> ExactMatrix {
        self.inner.flatten(f)
    }
    fn obj_iso(&self, x: &I::Obj, y: &I::Obj) -> Option<(I::Mor, I::Mor)> {
        self.inner.obj_iso(x, y)
    }
    fn is_triangle(&self, t: &Triangle<I::Mor>) -> bool {
        self.inner.is_triangle(t)
    }
}
