//! Octahedra on arbitrary triangles, filling morphisms and weak (co)kernels.

use crate::category::{check_candidate, CatError, Octahedron, Triangle, TriangleMorphism, Triangulated};
use crate::report::{anchors, Checks};

use super::basic::{composite_is, cone_iso, square_commutes};

/// The composition axiom for given triangles on `f`, `g` and `g∘f`.
///
/// The instance octahedron on its own cones is transported along the
/// comparison isomorphisms `φ: C → Z` between each cone and the supplied
/// triangle.
pub fn octahedron_for<I: Triangulated>(
    inst: &I,
    tf: &Triangle<I::Mor>,
    tg: &Triangle<I::Mor>,
    th: &Triangle<I::Mor>,
) -> Result<Octahedron<I::Mor>, CatError> {
    let gf = inst.compose(&tg.f, &tf.f)?;
    if !inst.mor_equal(&gf, &th.f) {
        return Err(CatError::PreconditionViolated("third triangle does not start with g∘f".into()));
    }
    for t in [tf, tg, th] {
        check_candidate(inst, t)?;
    }
    let oct = inst.octahedron(&tf.f, &tg.f)?;
    let (_, phi_f_inv) = cone_iso(inst, tf)?;
    let (phi_g, _) = cone_iso(inst, tg)?;
    // Compare against the cone of the composite representative the
    // instance octahedron used; `th.f` may be a different representative.
    let (phi_h, phi_h_inv) = cone_iso(inst, &Triangle::new(gf, th.g.clone(), th.h.clone()))?;
    let k = crate::category::path(inst, &[&phi_h, &oct.k, &phi_f_inv])?;
    let k1 = crate::category::path(inst, &[&phi_g, &oct.k1, &phi_h_inv])?;
    let k2 = inst.compose(&inst.suspend_mor(&tf.g), &tg.h)?;
    Ok(Octahedron { first: tf.clone(), second: tg.clone(), composite: th.clone(), k, k1, k2 })
}

/// The five commutativity conditions and the triangle condition of the
/// composition axiom.
pub fn validate_octahedron<I: Triangulated>(inst: &I, o: &Octahedron<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let (a, b, h) = (&o.first, &o.second, &o.composite);
    c.expect(anchors::T5, composite_is(inst, &b.f, &a.f, &h.f), || "composite triangle does not start with g∘f".into());
    for (name, t) in [("first", a), ("second", b), ("composite", h)] {
        c.expect(anchors::T5, inst.is_triangle(t), || format!("{name} triangle is not a triangle"));
    }
    c.expect(anchors::T5, square_commutes(inst, &o.k, &a.g, &h.g, &b.f), || "k∘f' ≠ h'∘g".into());
    c.expect(anchors::T5, composite_is(inst, &h.h, &o.k, &a.h), || "h''∘k ≠ f''".into());
    c.expect(anchors::T5, composite_is(inst, &o.k1, &h.g, &b.g), || "k'∘h' ≠ g'".into());
    c.expect(
        anchors::T5,
        square_commutes(inst, &b.h, &o.k1, &inst.suspend_mor(&a.f), &h.h),
        || "g''∘k' ≠ Σf∘h''".into(),
    );
    let expected_k2 = inst.compose(&inst.suspend_mor(&a.g), &b.h);
    c.expect(anchors::T5, expected_k2.map(|e| inst.mor_equal(&e, &o.k2)).unwrap_or(false), || {
        "k'' ≠ Σf'∘g''".into()
    });
    c.expect(anchors::T5, inst.is_triangle(&o.triangle()), || "(k, k', k'') is not a triangle".into());
    c
}

/// [`validate_octahedron`] plus agreement of the three triangles with the
/// instance cones.
pub fn validate_instance_octahedron<I: Triangulated>(inst: &I, o: &Octahedron<I::Mor>) -> Checks {
    let mut c = validate_octahedron(inst, o);
    for (name, t) in [("first", &o.first), ("second", &o.second), ("composite", &o.composite)] {
        let cone = inst.cone(&t.f);
        let same = inst.target(&cone.g) == inst.target(&t.g)
            && inst.mor_equal(&cone.g, &t.g)
            && inst.mor_equal(&cone.h, &t.h);
        c.expect(anchors::T5, same, || format!("{name} triangle differs from the instance cone"));
    }
    c
}

/// A third vertical map `m: Z1 → Z2` completing `(j, k)` to a morphism of
/// triangles `t1 → t2`, given `k∘f1 = f2∘j`.
///
/// Built from two octahedra through `d = k∘f1`: the first on `(f1, k)` gives
/// `Z1 → C_d`, the second on `(j, f2)` gives `C_d → Z2`.
pub fn filling_morphism<I: Triangulated>(
    inst: &I,
    t1: &Triangle<I::Mor>,
    t2: &Triangle<I::Mor>,
    j: &I::Mor,
    k: &I::Mor,
) -> Result<I::Mor, CatError> {
    check_candidate(inst, t1)?;
    check_candidate(inst, t2)?;
    if inst.source(j) != inst.source(&t1.f)
        || inst.target(j) != inst.source(&t2.f)
        || inst.source(k) != inst.target(&t1.f)
        || inst.target(k) != inst.target(&t2.f)
    {
        return Err(CatError::ShapeMismatch("vertical maps do not fit the triangles".into()));
    }
    if !square_commutes(inst, k, &t1.f, &t2.f, j) {
        return Err(CatError::PreconditionViolated("k∘f1 ≠ f2∘j".into()));
    }
    let d = inst.compose(k, &t1.f)?;
    let td = inst.cone(&d);
    let first = octahedron_for(inst, t1, &inst.cone(k), &td)?;
    let via_j = Triangle::new(inst.compose(&t2.f, j)?, td.g.clone(), td.h.clone());
    let second = octahedron_for(inst, &inst.cone(j), t2, &via_j)?;
    inst.compose(&second.k1, &first.k)
}

/// The two squares a filling must make commute.
pub fn check_filling<I: Triangulated>(inst: &I, m: &TriangleMorphism<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let (s, t) = (&m.source, &m.target);
    c.expect(anchors::FILLING, square_commutes(inst, &m.b, &s.f, &t.f, &m.a), || "b∘f1 ≠ f2∘a".into());
    c.expect(anchors::FILLING, square_commutes(inst, &m.c, &s.g, &t.g, &m.b), || "c∘g1 ≠ g2∘b".into());
    c.expect(
        anchors::FILLING,
        square_commutes(inst, &inst.suspend_mor(&m.a), &s.h, &t.h, &m.c),
        || "Σa∘h1 ≠ h2∘c".into(),
    );
    c
}

/// Whether a morphism of triangles is an isomorphism; when its first two
/// components are isomorphisms, the third one must be too.
pub fn check_filling_iso<I: Triangulated>(inst: &I, m: &TriangleMorphism<I::Mor>) -> Checks {
    let mut c = Checks::new();
    if inst.inverse(&m.a).is_some() && inst.inverse(&m.b).is_some() {
        c.expect(anchors::FILLING_ISO, inst.inverse(&m.c).is_some(), || "third map of the filling is not invertible".into());
    }
    c
}

/// For a triangle `X --f--> Y --g--> Z` and `h: Y → V` with `h∘f = 0`,
/// an extension `e: Z → V` with `e∘g = h`.
pub fn weak_cokernel_extend<I: Triangulated>(
    inst: &I,
    t: &Triangle<I::Mor>,
    h: &I::Mor,
) -> Result<I::Mor, CatError> {
    let x = inst.source(&t.f);
    let v = inst.target(h);
    let zero = inst.zero_object();
    let hf = inst.compose(h, &t.f)?;
    if !inst.mor_equal(&hf, &inst.zero(&x, &v)) {
        return Err(CatError::PreconditionViolated("h∘f ≠ 0".into()));
    }
    let bottom = Triangle::new(inst.zero(&zero, &v), inst.identity(&v), inst.zero(&v, &inst.suspend_obj(&zero)));
    filling_morphism(inst, t, &bottom, &inst.zero(&x, &zero), h)
}

/// For a triangle `X --f--> Y --g--> Z --h--> ΣX` and `w: W → Y` with
/// `g∘w = 0`, a lift `l: W → X` with `f∘l = w`.
///
/// Stated on the rotation that starts at `g`: the lift is a filling from
/// `W → 0 → ΣW = ΣW` into the rotated triangle, desuspended.
pub fn weak_kernel_lift<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>, w: &I::Mor) -> Result<I::Mor, CatError> {
    let wo = inst.source(w);
    let z = inst.target(&t.g);
    let gw = inst.compose(&t.g, w)?;
    if !inst.mor_equal(&gw, &inst.zero(&wo, &z)) {
        return Err(CatError::PreconditionViolated("g∘w ≠ 0".into()));
    }
    let zero = inst.zero_object();
    let sw = inst.suspend_obj(&wo);
    let top = Triangle::new(inst.zero(&wo, &zero), inst.zero(&zero, &sw), inst.identity(&sw));
    let rotated = super::basic::rotate(inst, t);
    // Filling into (g, h, −Σf) over j = w, k = 0 gives m: ΣW → ΣX with
    // −Σf∘m = Σw, so l = −Σ⁻¹m.
    let m = filling_morphism(inst, &top, &rotated, w, &inst.zero(&zero, &z))?;
    Ok(inst.negate(&inst.desuspend_mor(&m)))
}
