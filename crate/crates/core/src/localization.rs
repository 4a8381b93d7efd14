//! Thick subcategories, `Iso(D)`, left fractions and Verdier localization.
//!
//! A subcategory `D` is an extensional membership predicate together with a
//! finite list of member objects used as a search space. Morphisms of `C/D`
//! are left fractions `w⁻¹∘f` with `w ∈ Iso(D)`. Right fractions are left
//! fractions of the opposite instance.
//!
//! Fraction equality reduces to `Loc(δ) = 0`, which holds exactly when `δ`
//! factors through an object of `D`. The search looks for a factorization
//! through a finite sum of generators, a linear problem in the hom-group.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::category::{CatError, Triangulated};
use crate::chain::{ChainInstance, Complex};
use crate::linalg::ExactMatrix;
use crate::report::{anchors, Checks, Report};
use crate::toolkit::{postcompose_matrix, Op, rotate, sample_rng, validate_instance_octahedron, Sampler, VerifyConfig};
use crate::vect::{VectInstance, VectSpace};

type Membership<I> = Arc<dyn Fn(&I, &<I as Triangulated>::Obj) -> bool + Send + Sync>;

/// A full subcategory given by a membership predicate, closed under
/// isomorphism.
pub struct Subcategory<I: Triangulated> {
    name: String,
    member: Membership<I>,
    /// Members through which factorizations are searched.
    pub generators: Vec<I::Obj>,
    /// `Hom(W, E) = 0` for every member `E`; such `W` probe non-vanishing.
    orthogonal: Membership<I>,
    /// `Hom(E, W) = 0` for every member `E`.
    co_orthogonal: Membership<I>,
}

impl<I: Triangulated> Clone for Subcategory<I> {
    fn clone(&self) -> Self {
        Subcategory {
            name: self.name.clone(),
            member: self.member.clone(),
            generators: self.generators.clone(),
            orthogonal: self.orthogonal.clone(),
            co_orthogonal: self.co_orthogonal.clone(),
        }
    }
}

impl<I: Triangulated> std::fmt::Debug for Subcategory<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subcategory").field("name", &self.name).field("generators", &self.generators).finish()
    }
}

impl<I: Triangulated> Subcategory<I> {
    /// A subcategory whose orthogonality is only known for zero objects.
    pub fn new(name: &str, member: impl Fn(&I, &I::Obj) -> bool + Send + Sync + 'static, generators: Vec<I::Obj>) -> Self {
        let zero: Membership<I> = Arc::new(|inst: &I, w: &I::Obj| inst.is_zero_object(w));
        Subcategory { name: name.to_string(), member: Arc::new(member), generators, orthogonal: zero.clone(), co_orthogonal: zero }
    }

    /// Declares `Hom(W, D) = 0` and `Hom(D, W) = 0` for the given `W`.
    pub fn with_orthogonals(
        mut self,
        orthogonal: impl Fn(&I, &I::Obj) -> bool + Send + Sync + 'static,
        co_orthogonal: impl Fn(&I, &I::Obj) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.orthogonal = Arc::new(orthogonal);
        self.co_orthogonal = Arc::new(co_orthogonal);
        self
    }

    /// The zero objects.
    pub fn zero_only() -> Self {
        Self::new("zero_only", |inst: &I, x: &I::Obj| inst.is_zero_object(x), Vec::new())
            .with_orthogonals(|_: &I, _: &I::Obj| true, |_: &I, _: &I::Obj| true)
    }

    /// Every object; `generators` should generate each hom-group under
    /// composition, e.g. the shifts of a unit object.
    pub fn all(generators: Vec<I::Obj>) -> Self {
        Self::new("all", |_: &I, _: &I::Obj| true, generators)
    }

    /// The same objects, seen in the opposite instance.
    pub fn opposite(self) -> Subcategory<Op<I>>
    where
        I: 'static,
    {
        let (m, o, co) = (self.member, self.orthogonal, self.co_orthogonal);
        Subcategory {
            name: self.name,
            member: Arc::new(move |op: &Op<I>, x: &I::Obj| m(op.inner(), x)),
            generators: self.generators,
            orthogonal: Arc::new(move |op: &Op<I>, x: &I::Obj| co(op.inner(), x)),
            co_orthogonal: Arc::new(move |op: &Op<I>, x: &I::Obj| o(op.inner(), x)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, inst: &I, x: &I::Obj) -> bool {
        (self.member)(inst, x)
    }

    pub fn is_orthogonal(&self, inst: &I, w: &I::Obj) -> bool {
        (self.orthogonal)(inst, w)
    }
}

/// Even-dimensional spaces: triangulated, not thick.
pub fn even_dim(inst: &VectInstance) -> Subcategory<VectInstance> {
    Subcategory::new("even_dim", |_: &VectInstance, x: &VectSpace| x.dim.is_multiple_of(2), vec![inst.space(2)])
}

pub fn vect_all(inst: &VectInstance) -> Subcategory<VectInstance> {
    Subcategory::all(vec![inst.space(1)])
}

/// Acyclic complexes. Over a field they are contractible, so this is the
/// class of zero objects of the homotopy category and `C/D` is `D(K)`.
pub fn acyclic() -> Subcategory<ChainInstance> {
    Subcategory::new("acyclic", |_: &ChainInstance, x: &Complex| x.is_acyclic(), Vec::new())
        .with_orthogonals(|_: &ChainInstance, _: &Complex| true, |_: &ChainInstance, _: &Complex| true)
}

/// `f ∈ Iso(D)`: the cone of `f` lies in `D`.
pub fn in_iso_d<I: Triangulated>(inst: &I, d: &Subcategory<I>, f: &I::Mor) -> bool {
    d.contains(inst, &inst.target(&inst.cone(f).g))
}

/// `X` lies in the thick closure of a triangulated `D` iff `X ⊕ ΣX ∈ D`.
pub fn thick_closure_member<I: Triangulated>(inst: &I, d: &Subcategory<I>, x: &I::Obj) -> bool {
    d.contains(inst, &inst.biproduct(x, &inst.suspend_obj(x)).object)
}

/// `Loc(f)` is invertible iff `f ∈ Iso(D̄)`.
pub fn loc_is_iso<I: Triangulated>(inst: &I, d: &Subcategory<I>, f: &I::Mor) -> bool {
    thick_closure_member(inst, d, &inst.target(&inst.cone(f).g))
}

/// The homotopy pushout of `X' <--w-- X --f--> Y`.
#[derive(Clone, Debug)]
pub struct Pushout<M> {
    /// `f': X' → Y'`.
    pub f: M,
    /// `w': Y → Y'`.
    pub w: M,
}

/// Completes `(w; f): X → X' ⊕ Y` to a triangle whose second map is
/// `(−f', w')`, so that `f'∘w = w'∘f`.
pub fn homotopy_pushout<I: Triangulated>(inst: &I, w: &I::Mor, f: &I::Mor) -> Result<Pushout<I::Mor>, CatError> {
    if inst.source(w) != inst.source(f) {
        return Err(CatError::ShapeMismatch("homotopy pushout needs a common source".into()));
    }
    let b = inst.biproduct(&inst.target(w), &inst.target(f));
    let u = inst.add(&inst.compose(&b.i1, w)?, &inst.compose(&b.i2, f)?)?;
    let t = inst.cone(&u);
    Ok(Pushout { f: inst.negate(&inst.compose(&t.g, &b.i1)?), w: inst.compose(&t.g, &b.i2)? })
}

/// The left fraction `w⁻¹∘f` from `source f` to `source w`.
#[derive(Clone, Debug)]
pub struct Fraction<M> {
    pub f: M,
    pub w: M,
}

impl<M> Fraction<M> {
    pub fn new<I>(inst: &I, d: &Subcategory<I>, f: M, w: M) -> Result<Self, CatError>
    where
        I: Triangulated<Mor = M>,
    {
        if inst.target(&f) != inst.target(&w) {
            return Err(CatError::ShapeMismatch("fraction legs must share a target".into()));
        }
        if !in_iso_d(inst, d, &w) {
            return Err(CatError::PreconditionViolated("denominator is not in Iso(D)".into()));
        }
        Ok(Fraction { f, w })
    }
}

/// `Loc(f) = id⁻¹∘f`.
pub fn loc<I: Triangulated>(inst: &I, f: &I::Mor) -> Fraction<I::Mor> {
    Fraction { f: f.clone(), w: inst.identity(&inst.target(f)) }
}

/// `b∘a`, moving `a.w⁻¹` past `b.f` by a homotopy pushout.
pub fn compose_fractions<I: Triangulated>(
    inst: &I,
    b: &Fraction<I::Mor>,
    a: &Fraction<I::Mor>,
) -> Result<Fraction<I::Mor>, CatError> {
    if inst.source(&a.w) != inst.source(&b.f) {
        return Err(CatError::ShapeMismatch("fractions are not composable".into()));
    }
    let p = homotopy_pushout(inst, &a.w, &b.f)?;
    Ok(Fraction { f: inst.compose(&p.f, &a.f)?, w: inst.compose(&p.w, &b.w)? })
}

/// Outcome of a fraction comparison.
#[derive(Clone, Debug)]
pub enum FractionEq<M> {
    /// `witness ∈ Iso(D)` with `witness∘δ = 0` for the difference `δ`
    /// over a common denominator.
    Equal { witness: M },
    /// A functor `Hom(W, −)` vanishing on `D` separates the two.
    NotEqual { probe: String },
    Undecided,
}

impl<M> FractionEq<M> {
    pub fn is_equal(&self) -> bool {
        matches!(self, FractionEq::Equal { .. })
    }

    pub fn is_not_equal(&self) -> bool {
        matches!(self, FractionEq::NotEqual { .. })
    }
}

/// Decides whether two fractions `X → Y` agree in `C/D`.
pub fn fractions_equal<I: Triangulated>(
    inst: &I,
    d: &Subcategory<I>,
    a: &Fraction<I::Mor>,
    b: &Fraction<I::Mor>,
) -> Result<FractionEq<I::Mor>, CatError> {
    if inst.source(&a.f) != inst.source(&b.f) || inst.source(&a.w) != inst.source(&b.w) {
        return Err(CatError::ShapeMismatch("fractions have different endpoints".into()));
    }
    // Common denominator: u₁∘a.w = u₂∘b.w.
    let p = homotopy_pushout(inst, &a.w, &b.w)?;
    let delta = inst.add(&inst.compose(&p.f, &a.f)?, &inst.negate(&inst.compose(&p.w, &b.f)?))?;
    loc_vanishes(inst, d, &delta)
}

/// Decides `Loc(δ) = 0`: some `w ∈ Iso(D)` has `w∘δ = 0`.
pub fn loc_vanishes<I: Triangulated>(
    inst: &I,
    d: &Subcategory<I>,
    delta: &I::Mor,
) -> Result<FractionEq<I::Mor>, CatError> {
    let (x, y) = (inst.source(delta), inst.target(delta));
    if inst.mor_equal(delta, &inst.zero(&x, &y)) {
        return Ok(FractionEq::Equal { witness: inst.identity(&y) });
    }
    if let Some((_, _, b)) = factor_through_generators(inst, d, delta)? {
        let w = inst.cone(&b).g;
        let wd = inst.compose(&w, delta)?;
        let certified = inst.mor_equal(&wd, &inst.zero(&x, &inst.target(&w))) && in_iso_d(inst, d, &w);
        if certified {
            return Ok(FractionEq::Equal { witness: w });
        }
        return Err(CatError::Construction("factorization witness failed its certificate".into()));
    }
    if d.is_orthogonal(inst, &x) {
        // Hom(X, −) kills D, so it factors through Loc and sends δ∘id_X ≠ 0.
        return Ok(FractionEq::NotEqual { probe: format!("Hom({}, −)", inst.display_obj(&x)) });
    }
    Ok(FractionEq::Undecided)
}

/// `δ = B∘A` through a finite sum `E` of generators, when one exists.
#[allow(clippy::type_complexity)]
fn factor_through_generators<I: Triangulated>(
    inst: &I,
    d: &Subcategory<I>,
    delta: &I::Mor,
) -> Result<Option<(I::Obj, I::Mor, I::Mor)>, CatError> {
    let (x, y) = (inst.source(delta), inst.target(delta));
    let hom = inst.hom_space(&x, &y);
    let mut products: Vec<(I::Mor, I::Mor)> = Vec::new();
    let mut cols: Vec<ExactMatrix> = Vec::new();
    for e in &d.generators {
        let into = inst.hom_space(&x, e);
        let out = inst.hom_space(e, &y);
        for a in &into.basis {
            for b in &out.basis {
                cols.push(hom.coordinates(inst, &inst.compose(b, a)?));
                products.push((a.clone(), b.clone()));
            }
        }
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    let span = ExactMatrix::hstack(inst.field(), hom.dim(), &refs)?;
    let coeffs = match span.solve(&hom.coordinates(inst, delta)) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let used: Vec<usize> = (0..products.len()).filter(|&k| !coeffs.get(k, 0).is_zero()).collect();
    let mut sum = inst.zero_object();
    let mut a_total = inst.zero(&x, &sum);
    let mut b_total = inst.zero(&sum, &y);
    for k in used {
        let (a, b) = &products[k];
        let c = coeffs.get(k, 0);
        let e = inst.target(a);
        let s = inst.biproduct(&sum, &e);
        a_total = inst.add(&inst.compose(&s.i1, &a_total)?, &inst.compose(&s.i2, &inst.scale(&c, a))?)?;
        b_total = inst.add(&inst.compose(&b_total, &s.p1)?, &inst.compose(b, &s.p2)?)?;
        sum = s.object;
    }
    Ok(Some((sum, a_total, b_total)))
}

/// Dimension of the image of `Hom_C(X, Y)` in `Hom_{C/D}(X, Y)`: the hom
/// space modulo maps factoring through sums of generators. This is the full
/// localized hom dimension when `Loc` is full on the pair, e.g. when `D`
/// consists of zero objects or `C/D` is trivial.
pub fn loc_image_dim<I: Triangulated>(inst: &I, d: &Subcategory<I>, x: &I::Obj, y: &I::Obj) -> Result<usize, CatError> {
    let hom = inst.hom_space(x, y);
    let mut cols: Vec<ExactMatrix> = Vec::new();
    for e in &d.generators {
        let into = inst.hom_space(x, e);
        let out = inst.hom_space(e, y);
        for a in &into.basis {
            for b in &out.basis {
                cols.push(hom.coordinates(inst, &inst.compose(b, a)?));
            }
        }
    }
    if cols.is_empty() {
        return Ok(hom.dim());
    }
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    Ok(hom.dim() - ExactMatrix::hstack(inst.field(), hom.dim(), &refs)?.rank())
}

/// `X ≅ 0` in `C/D`, decided by comparing `Loc(id_X)` with `Loc(0)`.
pub fn kernel_of_loc<I: Triangulated>(inst: &I, d: &Subcategory<I>, x: &I::Obj) -> Result<bool, CatError> {
    match loc_vanishes(inst, d, &inst.identity(x))? {
        FractionEq::Equal { .. } => Ok(true),
        FractionEq::NotEqual { .. } => Ok(false),
        FractionEq::Undecided => Err(CatError::Undecided(format!("whether {} is zero in C/D", inst.display_obj(x)))),
    }
}

/// Only `{0}` and everything are thick in vect, so the thick subcategory
/// generated by the cones of `ws` is one of those two.
pub fn d_from_morphism_class_vect(inst: &VectInstance, ws: &[ExactMatrix]) -> Subcategory<VectInstance> {
    if ws.iter().any(|w| !inst.is_zero_object(&inst.target(&inst.cone(w).g))) {
        vect_all(inst)
    } else {
        Subcategory::zero_only()
    }
}

/// The thick triangulated subcategory generated by the cones of a class of
/// morphisms, decided by bounded saturation.
pub struct GeneratedSubcategory<I: Triangulated> {
    pub cones: Vec<I::Obj>,
    pub budget: usize,
}

pub fn d_from_morphism_class<I: Triangulated>(inst: &I, ws: &[I::Mor], budget: usize) -> GeneratedSubcategory<I> {
    GeneratedSubcategory { cones: ws.iter().map(|w| inst.target(&inst.cone(w).g)).collect(), budget }
}

impl<I: Triangulated> GeneratedSubcategory<I> {
    /// Saturates the cones under `Σ^{±1}`, sums and cones of hom basis
    /// maps, testing `x ≅ m` or `x ⊕ Σx ≅ m` against each new member `m`.
    /// `false` only when the saturation closes up.
    pub fn contains(&self, inst: &I, x: &I::Obj) -> Result<bool, CatError> {
        let xs = inst.biproduct(x, &inst.suspend_obj(x)).object;
        let hit = |m: &I::Obj| inst.obj_iso(x, m).is_some() || inst.obj_iso(&xs, m).is_some();
        let mut members: Vec<I::Obj> = Vec::new();
        let mut queue: Vec<I::Obj> = self.cones.clone();
        while let Some(m) = queue.pop() {
            if members.iter().any(|k| inst.obj_iso(k, &m).is_some()) {
                continue;
            }
            if hit(&m) {
                return Ok(true);
            }
            if members.len() >= self.budget {
                return Err(CatError::SaturationBudgetExceeded(members.len()));
            }
            let mut next = vec![inst.suspend_obj(&m), inst.desuspend_obj(&m)];
            for k in members.iter().chain(std::iter::once(&m)) {
                next.push(inst.biproduct(k, &m).object);
                for f in inst.hom_space(k, &m).basis.iter().chain(inst.hom_space(&m, k).basis.iter()) {
                    next.push(inst.target(&inst.cone(f).g));
                }
            }
            members.push(m);
            // Breadth first: older entries are saturated before new ones.
            queue.splice(0..0, next);
        }
        Ok(inst.is_zero_object(x))
    }
}

/// A morphism `Y → C` in `Iso(D)`: the cone map of some `Σ⁻¹E → Y` with `E`
/// a member, so its cone is `E` up to isomorphism.
pub fn sample_iso_d<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    d: &Subcategory<I>,
    sampler: &S,
    y: &I::Obj,
    rng: &mut ChaCha8Rng,
) -> I::Mor {
    let e = (0..30)
        .map(|_| sampler.object(inst, rng))
        .find(|e| d.contains(inst, e))
        .unwrap_or_else(|| inst.zero_object());
    let b = sampler.morphism(inst, &inst.desuspend_obj(&e), y, rng);
    inst.cone(&b).g
}

/// Subcategory closure on samples: members are closed under `Σ^{±1}` and under cones of
/// maps between members.
pub fn check_subcategory<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    d: &Subcategory<I>,
    sampler: &S,
    samples: usize,
    seed: u64,
) -> Checks {
    let mut c = Checks::new();
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let (x, y) = (sampler.object(inst, &mut rng), sampler.object(inst, &mut rng));
        if !d.contains(inst, &x) {
            continue;
        }
        c.expect(anchors::SUBCATEGORY, d.contains(inst, &inst.suspend_obj(&x)) && d.contains(inst, &inst.desuspend_obj(&x)), || {
            format!("{} is a member but a shift is not", inst.display_obj(&x))
        });
        if d.contains(inst, &y) {
            let f = sampler.morphism(inst, &x, &y, &mut rng);
            let cone = inst.target(&inst.cone(&f).g);
            c.expect(anchors::SUBCATEGORY, d.contains(inst, &cone), || {
                format!("cone {} of a map between members is not a member", inst.display_obj(&cone))
            });
        }
    }
    c
}

/// Result of [`is_thick`]: the checks and the first split monomorphism
/// `X → X ⊕ Y` into a member with `X` outside `D`.
#[derive(Clone, Debug)]
pub struct ThickReport<O> {
    pub checks: Checks,
    pub witness: Option<(O, O)>,
}

impl<O> ThickReport<O> {
    pub fn is_thick(&self) -> bool {
        self.checks.all_passed()
    }
}

/// Samples split monomorphisms `X → X ⊕ Y` and `X → X ⊕ X` into members
/// and checks that `X` is a member.
pub fn is_thick<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    d: &Subcategory<I>,
    sampler: &S,
    samples: usize,
    seed: u64,
) -> ThickReport<I::Obj> {
    let mut checks = Checks::new();
    let mut witness = None;
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let x = sampler.object(inst, &mut rng);
        let y = sampler.object(inst, &mut rng);
        for other in [y, x.clone()] {
            let s = inst.biproduct(&x, &other).object;
            if !d.contains(inst, &s) {
                continue;
            }
            let ok = d.contains(inst, &x);
            checks.expect(anchors::THICK, ok, || {
                format!("{} ↪ {} splits into a member", inst.display_obj(&x), inst.display_obj(&s))
            });
            if !ok && witness.is_none() {
                witness = Some((x.clone(), s));
            }
        }
    }
    ThickReport { checks, witness }
}

/// For thick `D` and composable `X --f--> Y --g--> Z`: if `Y` and the cone of `g∘f` are members, so are `X` and `Z`.
pub fn check_thickcrit<I: Triangulated>(inst: &I, d: &Subcategory<I>, f: &I::Mor, g: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let (y, h) = (inst.target(f), inst.compose(g, f));
    let Ok(h) = h else {
        c.push(anchors::THICK_CRIT, false, "pair is not composable".to_string());
        return c;
    };
    if d.contains(inst, &y) && d.contains(inst, &inst.target(&inst.cone(&h).g)) {
        let (x, z) = (inst.source(f), inst.target(g));
        c.expect(anchors::THICK_CRIT, d.contains(inst, &x) && d.contains(inst, &z), || {
            format!("{} and {} should be members", inst.display_obj(&x), inst.display_obj(&z))
        });
    }
    c
}

/// 2-out-of-3 for `Iso(D)` on a composable pair `X --v--> Y --w--> Z`.
pub fn check_two_of_three<I: Triangulated>(inst: &I, d: &Subcategory<I>, v: &I::Mor, w: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let Ok(wv) = inst.compose(w, v) else {
        c.push(anchors::TWO_OF_THREE, false, "pair is not composable".to_string());
        return c;
    };
    let (a, b, ab) = (in_iso_d(inst, d, v), in_iso_d(inst, d, w), in_iso_d(inst, d, &wv));
    let ok = (!(a && b) || ab) && (!(b && ab) || a) && (!(a && ab) || b);
    c.expect(anchors::TWO_OF_THREE, ok, || format!("v ∈ Iso(D): {a}, w ∈ Iso(D): {b}, wv ∈ Iso(D): {ab}"));
    c
}

/// Homotopy pushout: the square commutes, and `w ∈ Iso(D)` forces `w' ∈ Iso(D)`.
pub fn check_pushout<I: Triangulated>(inst: &I, d: &Subcategory<I>, w: &I::Mor, f: &I::Mor) -> Checks {
    let mut c = Checks::new();
    match homotopy_pushout(inst, w, f) {
        Ok(p) => {
            let square = (|| {
                let lhs = inst.compose(&p.f, w).ok()?;
                let rhs = inst.compose(&p.w, f).ok()?;
                Some(inst.mor_equal(&lhs, &rhs))
            })()
            .unwrap_or(false);
            c.expect(anchors::PUSHOUT, square, || "−f'∘w + w'∘f ≠ 0".into());
            if in_iso_d(inst, d, w) {
                c.expect(anchors::PUSHOUT, in_iso_d(inst, d, &p.w), || "w ∈ Iso(D) but w' ∉ Iso(D)".into());
            }
        }
        Err(e) => c.push(anchors::PUSHOUT, false, format!("pushout failed: {e}")),
    }
    c
}

fn expect_equal<I: Triangulated>(
    c: &mut Checks,
    anchor: &str,
    inst: &I,
    d: &Subcategory<I>,
    a: &Fraction<I::Mor>,
    b: &Fraction<I::Mor>,
    what: &str,
) {
    match fractions_equal(inst, d, a, b) {
        Ok(FractionEq::Equal { .. }) => c.push(anchor, true, None),
        Ok(other) => c.push(anchor, false, format!("{what}: {other:?}")),
        Err(e) => c.push(anchor, false, format!("{what}: {e}")),
    }
}

/// One sample of the localized checks; see [`verify_localized_triangulation`].
pub fn localized_sample<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    d: &Subcategory<I>,
    sampler: &S,
    rng: &mut ChaCha8Rng,
) -> Result<(Checks, LocalizedSampleData), CatError> {
    let mut c = Checks::new();
    let x = sampler.object(inst, rng);
    let y = sampler.object(inst, rng);
    let z = sampler.object(inst, rng);
    let f = sampler.morphism(inst, &x, &y, rng);
    let g = sampler.morphism(inst, &y, &z, rng);

    // Fractions a: X → Y and b: Y → Z with nontrivial denominators.
    let w1 = sample_iso_d(inst, d, sampler, &y, rng);
    let y1 = inst.target(&w1);
    let f1 = sampler.morphism(inst, &x, &y1, rng);
    let a = Fraction::new(inst, d, f1.clone(), w1.clone())?;
    let w2 = sample_iso_d(inst, d, sampler, &z, rng);
    let f2 = sampler.morphism(inst, &y, &inst.target(&w2), rng);
    let b = Fraction::new(inst, d, f2, w2.clone())?;

    // L0 and 2-out-of-3 on Iso(D).
    let u = sample_iso_d(inst, d, sampler, &y1, rng);
    c.expect(anchors::FRACTIONS, in_iso_d(inst, d, &inst.identity(&x)), || "identity outside Iso(D)".into());
    c.extend(check_two_of_three(inst, d, &w1, &u));
    c.extend(check_pushout(inst, d, &w1, &g));

    // Equality is reflexive, survives expanding a roof, and is symmetric.
    let a_exp = Fraction { f: inst.compose(&u, &f1)?, w: inst.compose(&u, &w1)? };
    expect_equal(&mut c, anchors::FRACTION_EQ, inst, d, &a, &a, "a = a");
    expect_equal(&mut c, anchors::FRACTION_EQ, inst, d, &a, &a_exp, "a = expanded a");
    let loc_f = loc(inst, &f);
    let fwd = fractions_equal(inst, d, &a, &loc_f)?;
    let bwd = fractions_equal(inst, d, &loc_f, &a)?;
    let same = (fwd.is_equal() && bwd.is_equal()) || (fwd.is_not_equal() && bwd.is_not_equal());
    c.expect(anchors::FRACTION_EQ, same || matches!((&fwd, &bwd), (FractionEq::Undecided, FractionEq::Undecided)), || {
        format!("asymmetric: {fwd:?} vs {bwd:?}")
    });

    // Composition: identities are units and equality is a congruence.
    let ba = compose_fractions(inst, &b, &a)?;
    let ba_exp = compose_fractions(inst, &b, &a_exp)?;
    expect_equal(&mut c, anchors::FRACTIONS, inst, d, &ba, &ba_exp, "b∘a = b∘(expanded a)");
    let id_a = compose_fractions(inst, &loc(inst, &inst.identity(&y)), &a)?;
    expect_equal(&mut c, anchors::FRACTIONS, inst, d, &id_a, &a, "id∘a = a");
    let lgf = compose_fractions(inst, &loc(inst, &g), &loc(inst, &f))?;
    expect_equal(&mut c, anchors::FRACTIONS, inst, d, &lgf, &loc(inst, &inst.compose(&g, &f)?), "Loc(g)Loc(f) = Loc(gf)");

    // Images of triangles: consecutive composites vanish, also after rotation.
    let t = inst.cone(&f);
    for tri in [t.clone(), rotate(inst, &t)] {
        for (q, p) in [(&tri.g, &tri.f), (&tri.h, &tri.g)] {
            let comp = compose_fractions(inst, &loc(inst, q), &loc(inst, p))?;
            let zero = loc(inst, &inst.zero(&inst.source(p), &inst.target(q)));
            expect_equal(&mut c, anchors::LOC_TRIANGULATION, inst, d, &comp, &zero, "consecutive maps compose to 0");
        }
    }

    // T5 by lifting b∘a to X --f1--> Y1 --f3--> Z2, conjugate to (a, b)
    // through Loc(w1) and Loc(w3∘w2).
    let p = homotopy_pushout(inst, &w1, &b.f)?;
    let (f3, w32) = (p.f.clone(), inst.compose(&p.w, &b.w)?);
    let lhs1 = compose_fractions(inst, &loc(inst, &w1), &a)?;
    expect_equal(&mut c, anchors::LOC_TRIANGULATION, inst, d, &lhs1, &loc(inst, &f1), "Loc(w1)∘a = Loc(f1)");
    let lhs2 = compose_fractions(inst, &loc(inst, &w32), &b)?;
    let rhs2 = compose_fractions(inst, &loc(inst, &f3), &loc(inst, &w1))?;
    expect_equal(&mut c, anchors::LOC_TRIANGULATION, inst, d, &lhs2, &rhs2, "Loc(w3w2)∘b = Loc(f3)∘Loc(w1)");
    match inst.octahedron(&f1, &f3) {
        Ok(o) => {
            let v = validate_instance_octahedron(inst, &o);
            let ok = v.all_passed();
            c.expect(anchors::LOC_TRIANGULATION, ok, || "lifted octahedron fails validation".into());
        }
        Err(e) => c.push(anchors::LOC_TRIANGULATION, false, format!("lifted octahedron: {e}")),
    }

    // Hom(W, −) with Hom(W, D) = 0 inverts Iso(D).
    if d.is_orthogonal(inst, &x) {
        let m = postcompose_matrix(inst, &x, &w1)?;
        let ok = m.rows() == m.cols() && m.rank() == m.rows();
        c.expect(anchors::LOC_FACTOR, ok, || format!("Hom({}, w) is not bijective", inst.display_obj(&x)));
    }

    // Kernel of Loc and Loc-isomorphisms.
    let kernel = kernel_of_loc(inst, d, &x);
    let closure = thick_closure_member(inst, d, &x);
    c.expect(anchors::LOC_KERNEL, kernel.as_ref().map(|k| *k == closure).unwrap_or(false), || {
        format!("{}: kernel {kernel:?}, thick closure {closure}", inst.display_obj(&x))
    });
    c.expect(anchors::LOC_ISO, loc_is_iso(inst, d, &w1), || "a denominator is not a Loc-isomorphism".into());

    let zero_fraction = loc(inst, &inst.zero(&x, &y));
    let collapses = fractions_equal(inst, d, &a, &zero_fraction)?.is_equal();
    let data = LocalizedSampleData { object_zero: kernel.unwrap_or(false), fraction_zero: collapses, image_dim: loc_image_dim(inst, d, &x, &y)? };
    Ok((c, data))
}

/// Per-sample observations collected by [`verify_localized_triangulation`].
#[derive(Clone, Copy, Debug, Default)]
pub struct LocalizedSampleData {
    pub object_zero: bool,
    pub fraction_zero: bool,
    pub image_dim: usize,
}

/// Fraction arithmetic, `T1`–`T5` images and the kernel of `Loc` on samples.
/// The report data records how many sampled objects and fractions vanish.
pub fn verify_localized_triangulation<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    d: &Subcategory<I>,
    sampler: &S,
    config: VerifyConfig,
) -> Report {
    let mut report = Report::new("localize", &format!("{} / {}", inst.name(), d.name()), Some(config.seed));
    let mut zero_objects = 0usize;
    let mut zero_fractions = 0usize;
    let mut image_dims = Vec::with_capacity(config.samples);
    for i in 0..config.samples {
        let mut rng = sample_rng(config.seed, i);
        match localized_sample(inst, d, sampler, &mut rng) {
            Ok((c, data)) => {
                report.absorb(&c);
                zero_objects += data.object_zero as usize;
                zero_fractions += data.fraction_zero as usize;
                image_dims.push(data.image_dim);
            }
            Err(e) => {
                let mut c = Checks::new();
                c.push(anchors::LOC_TRIANGULATION, false, format!("sample {i}: {e}"));
                report.absorb(&c);
            }
        }
    }
    let mut sub = Checks::new();
    sub.extend(check_subcategory(inst, d, sampler, config.samples, config.seed));
    report.absorb(&sub);
    report.set_data("subcategory", d.name().into());
    report.set_data("samples", config.samples.into());
    report.set_data("zero_objects", zero_objects.into());
    report.set_data("zero_fractions", zero_fractions.into());
    report.set_data("loc_image_dims", image_dims.into());
    report
}
