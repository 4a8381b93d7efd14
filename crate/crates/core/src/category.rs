//! The contract a concrete triangulated category implements, and the
//! diagram values shared by every generic construction.
//!
//! Objects compare by strict structural equality: the last object of a
//! candidate triangle must *equal* the suspension of the first, an
//! isomorphism is not enough. Isomorphism testing is a separate operation.

use std::fmt::Debug;

use crate::linalg::{ExactMatrix, Field, FieldElement, LinalgError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a triangle: {0}")]
    NotATriangle(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("saturation budget exceeded after {0} members")]
    SaturationBudgetExceeded(usize),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A candidate triangle `X --f--> Y --g--> Z --h--> ΣX`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle<M> {
    pub f: M,
    pub g: M,
    pub h: M,
}

impl<M> Triangle<M> {
    pub fn new(f: M, g: M, h: M) -> Self {
        Triangle { f, g, h }
    }

    pub fn morphisms(&self) -> [&M; 3] {
        [&self.f, &self.g, &self.h]
    }
}

/// Vertical maps `(a, b, c)` between two candidate triangles; the fourth
/// vertical map is `Σa`.
#[derive(Clone, Debug)]
pub struct TriangleMorphism<M> {
    pub source: Triangle<M>,
    pub target: Triangle<M>,
    pub a: M,
    pub b: M,
    pub c: M,
}

/// Output of the composition axiom for `X --f--> Y --g--> Z`:
/// triangles on `f`, `g` and `h = g∘f`, and
/// `C_f --k--> C_h --k1--> C_g --k2--> ΣC_f` with `k2 = Σf'∘g''`.
#[derive(Clone, Debug)]
pub struct Octahedron<M> {
    pub first: Triangle<M>,
    pub second: Triangle<M>,
    pub composite: Triangle<M>,
    pub k: M,
    pub k1: M,
    pub k2: M,
}

impl<M: Clone> Octahedron<M> {
    pub fn triangle(&self) -> Triangle<M> {
        Triangle::new(self.k.clone(), self.k1.clone(), self.k2.clone())
    }
}

/// `X --i1--> object <--i2-- Y` with projections `p1`, `p2`.
#[derive(Clone, Debug)]
pub struct Biproduct<O, M> {
    pub object: O,
    pub i1: M,
    pub i2: M,
    pub p1: M,
    pub p2: M,
}

/// A finite basis of a hom-group together with a coordinate map.
///
/// `projection` sends the flattened representative of any morphism with the
/// right endpoints to its coordinates in `basis`; two morphisms are equal in
/// the category exactly when their coordinates agree.
#[derive(Clone, Debug)]
pub struct HomSpace<M> {
    pub basis: Vec<M>,
    pub projection: ExactMatrix,
}

impl<M> HomSpace<M> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates (a column) of `f` in this basis.
    pub fn coordinates<I>(&self, inst: &I, f: &M) -> ExactMatrix
    where
        I: Triangulated<Mor = M> + ?Sized,
    {
        &self.projection * &inst.flatten(f)
    }
}

/// The operations a triangulated instance supplies.
///
/// Hom-groups are finite-dimensional vector spaces over [`Triangulated::field`].
/// Implementations are pure; generic code may call them from several threads.
pub trait Triangulated: Send + Sync {
    type Obj: Clone + PartialEq + Debug + Send + Sync;
    type Mor: Clone + Debug + Send + Sync;

    fn name(&self) -> String;
    fn field(&self) -> Field;
    fn display_obj(&self, x: &Self::Obj) -> String;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn zero(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CatError>;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, CatError>;
    fn negate(&self, f: &Self::Mor) -> Self::Mor;
    fn scale(&self, c: &FieldElement, f: &Self::Mor) -> Self::Mor;

    fn suspend_obj(&self, x: &Self::Obj) -> Self::Obj;
    fn suspend_mor(&self, f: &Self::Mor) -> Self::Mor;
    fn desuspend_obj(&self, x: &Self::Obj) -> Self::Obj;
    fn desuspend_mor(&self, f: &Self::Mor) -> Self::Mor;

    fn zero_object(&self) -> Self::Obj;
    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj, Self::Mor>;

    /// A fixed triangle `(f, f', f'')` starting with `f`.
    fn cone(&self, f: &Self::Mor) -> Triangle<Self::Mor>;
    /// The composition axiom on the instance's own cone triangles of `f`,
    /// `g` and `g∘f`.
    fn octahedron(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Octahedron<Self::Mor>, CatError>;

    fn mor_equal(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    fn hom_space(&self, x: &Self::Obj, y: &Self::Obj) -> HomSpace<Self::Mor>;
    /// Ambient coordinates of a representative, as read by [`HomSpace::projection`].
    fn flatten(&self, f: &Self::Mor) -> ExactMatrix;
    /// An isomorphism `x → y` and its inverse, if `x ≅ y`.
    fn obj_iso(&self, x: &Self::Obj, y: &Self::Obj) -> Option<(Self::Mor, Self::Mor)>;

    /// Triangle membership. The default compares `t` with the cone triangle
    /// of `t.f` through the hom-groups; see [`cone_comparison`].
    fn is_triangle(&self, t: &Triangle<Self::Mor>) -> bool
    where
        Self: Sized,
    {
        cone_comparison(self, t).is_some()
    }

    /// Two-sided inverse, solved for in the hom-group.
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>
    where
        Self: Sized,
    {
        generic_inverse(self, f)
    }

    fn is_zero_object(&self, x: &Self::Obj) -> bool {
        self.mor_equal(&self.identity(x), &self.zero(x, x))
    }
}

/// `Σ cᵢ·bᵢ` as a morphism `x → y`.
pub fn lincomb<I: Triangulated>(
    inst: &I,
    coeffs: &ExactMatrix,
    basis: &[I::Mor],
    x: &I::Obj,
    y: &I::Obj,
) -> I::Mor {
    let mut acc = inst.zero(x, y);
    for (i, b) in basis.iter().enumerate() {
        let c = coeffs.get(i, 0);
        if !c.is_zero() {
            acc = inst.add(&acc, &inst.scale(&c, b)).expect("basis endpoints");
        }
    }
    acc
}

/// Composite of a path given outermost first: `path(inst, &[h, g, f]) = h∘g∘f`.
pub fn path<I: Triangulated>(inst: &I, maps: &[&I::Mor]) -> Result<I::Mor, CatError> {
    let (last, rest) = maps.split_last().expect("nonempty path");
    let mut acc = (*last).clone();
    for g in rest.iter().rev() {
        acc = inst.compose(g, &acc)?;
    }
    Ok(acc)
}

/// Checks that `(f, g, h)` is a candidate triangle: composable, with
/// `target(h) = Σ source(f)` on the nose.
pub fn check_candidate<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Result<(), CatError> {
    let x = inst.source(&t.f);
    if inst.target(&t.f) != inst.source(&t.g) {
        return Err(CatError::ShapeMismatch("target(f) ≠ source(g)".into()));
    }
    if inst.target(&t.g) != inst.source(&t.h) {
        return Err(CatError::ShapeMismatch("target(g) ≠ source(h)".into()));
    }
    if inst.target(&t.h) != inst.suspend_obj(&x) {
        return Err(CatError::ShapeMismatch("target(h) is not the suspension of source(f)".into()));
    }
    Ok(())
}

/// Solves for `g` with `g∘f = id` and `f∘g = id` in the hom-groups.
pub fn generic_inverse<I: Triangulated>(inst: &I, f: &I::Mor) -> Option<I::Mor> {
    let x = inst.source(f);
    let y = inst.target(f);
    let field = inst.field();
    let back = inst.hom_space(&y, &x);
    let hxx = inst.hom_space(&x, &x);
    let hyy = inst.hom_space(&y, &y);
    let mut cols = Vec::with_capacity(back.dim());
    for b in &back.basis {
        let left = hxx.coordinates(inst, &inst.compose(b, f).ok()?);
        let right = hyy.coordinates(inst, &inst.compose(f, b).ok()?);
        cols.push(ExactMatrix::vstack(field, 1, &[&left, &right]).ok()?);
    }
    let rhs = ExactMatrix::vstack(
        field,
        1,
        &[&hxx.coordinates(inst, &inst.identity(&x)), &hyy.coordinates(inst, &inst.identity(&y))],
    )
    .ok()?;
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    let a = ExactMatrix::hstack(field, rhs.rows(), &refs).ok()?;
    let c = a.solve(&rhs).ok()?;
    Some(lincomb(inst, &c, &back.basis, &y, &x))
}

/// For a candidate `t = (f, g, h)` on `X, Y, Z`, finds `φ: C_f → Z` with
/// `φ∘f' = g` and `h∘φ = f''`, where `(f, f', f'')` is the instance's cone
/// triangle, and returns it when it is an isomorphism.
///
/// Such a `φ` is a filling between the cone triangle and `t` over two
/// identities. If `t` is a triangle one exists and every such filling is an
/// isomorphism, so the result decides membership exactly.
pub fn cone_comparison<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Option<I::Mor> {
    check_candidate(inst, t).ok()?;
    let c = inst.cone(&t.f);
    let x = inst.source(&t.f);
    let y = inst.target(&t.f);
    let cf = inst.target(&c.g);
    let z = inst.target(&t.g);
    let sx = inst.suspend_obj(&x);
    let field = inst.field();
    let hom = inst.hom_space(&cf, &z);
    let hyz = inst.hom_space(&y, &z);
    let hcs = inst.hom_space(&cf, &sx);
    let mut cols = Vec::with_capacity(hom.dim());
    for b in &hom.basis {
        let first = hyz.coordinates(inst, &inst.compose(b, &c.g).ok()?);
        let second = hcs.coordinates(inst, &inst.compose(&t.h, b).ok()?);
        cols.push(ExactMatrix::vstack(field, 1, &[&first, &second]).ok()?);
    }
    let rhs = ExactMatrix::vstack(field, 1, &[&hyz.coordinates(inst, &t.g), &hcs.coordinates(inst, &c.h)]).ok()?;
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    let a = ExactMatrix::hstack(field, rhs.rows(), &refs).ok()?;
    let coeffs = a.solve(&rhs).ok()?;
    let phi = lincomb(inst, &coeffs, &hom.basis, &cf, &z);
    generic_inverse(inst, &phi).map(|_| phi)
}
