//! Rotation, sign insertion, vanishing and hom-exactness checks.

use crate::category::{check_candidate, cone_comparison, CatError, Triangle, Triangulated};
use crate::linalg::ExactMatrix;
use crate::report::{anchors, Checks};

/// `(f, g, h) ↦ (g, h, −Σf)`.
pub fn rotate<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
    Triangle::new(t.g.clone(), t.h.clone(), inst.negate(&inst.suspend_mor(&t.f)))
}

/// `(f, g, h) ↦ (−Σ⁻¹h, f, g)`, inverse to [`rotate`].
pub fn unrotate<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
    Triangle::new(inst.negate(&inst.desuspend_mor(&t.h)), t.f.clone(), t.g.clone())
}

/// Negates the two morphisms at positions `i < j` (0, 1 or 2).
pub fn insert_two_signs<I: Triangulated>(
    inst: &I,
    t: &Triangle<I::Mor>,
    i: usize,
    j: usize,
) -> Result<Triangle<I::Mor>, CatError> {
    if i >= j || j > 2 {
        return Err(CatError::PreconditionViolated(format!("sign positions ({i}, {j})")));
    }
    let mut ms = [t.f.clone(), t.g.clone(), t.h.clone()];
    ms[i] = inst.negate(&ms[i]);
    ms[j] = inst.negate(&ms[j]);
    let [f, g, h] = ms;
    Ok(Triangle::new(f, g, h))
}

/// Negates all three morphisms.
pub fn negate_triangle<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
    Triangle::new(inst.negate(&t.f), inst.negate(&t.g), inst.negate(&t.h))
}

/// Applies `Σ` to all three morphisms; the result is a triangle after one
/// sign change, see [`suspend_triangle`].
pub fn suspend_each<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
    Triangle::new(inst.suspend_mor(&t.f), inst.suspend_mor(&t.g), inst.suspend_mor(&t.h))
}

/// The triangle `(−Σf, −Σg, Σh)` obtained by rotating three times and
/// inserting two signs.
pub fn suspend_triangle<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Triangle<I::Mor> {
    Triangle::new(
        inst.negate(&inst.suspend_mor(&t.f)),
        inst.negate(&inst.suspend_mor(&t.g)),
        inst.suspend_mor(&t.h),
    )
}

/// The three object labels `X, Y, Z` of a candidate triangle.
pub fn triangle_objects<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> [I::Obj; 3] {
    [inst.source(&t.f), inst.source(&t.g), inst.source(&t.h)]
}

/// Whether `g∘f` equals `expected` in the category.
pub fn composite_is<I: Triangulated>(inst: &I, g: &I::Mor, f: &I::Mor, expected: &I::Mor) -> bool {
    match inst.compose(g, f) {
        Ok(c) => inst.mor_equal(&c, expected),
        Err(_) => false,
    }
}

/// Whether `a∘b = c∘d`.
pub fn square_commutes<I: Triangulated>(inst: &I, a: &I::Mor, b: &I::Mor, c: &I::Mor, d: &I::Mor) -> bool {
    match (inst.compose(a, b), inst.compose(c, d)) {
        (Ok(l), Ok(r)) => inst.mor_equal(&l, &r),
        _ => false,
    }
}

/// Whether `a∘b = −c∘d`.
pub fn square_anticommutes<I: Triangulated>(inst: &I, a: &I::Mor, b: &I::Mor, c: &I::Mor, d: &I::Mor) -> bool {
    match (inst.compose(a, b), inst.compose(c, d)) {
        (Ok(l), Ok(r)) => inst.mor_equal(&l, &inst.negate(&r)),
        _ => false,
    }
}

fn is_zero_mor<I: Triangulated>(inst: &I, m: &I::Mor) -> bool {
    inst.mor_equal(m, &inst.zero(&inst.source(m), &inst.target(m)))
}

fn vanishes<I: Triangulated>(inst: &I, g: &I::Mor, f: &I::Mor) -> bool {
    inst.compose(g, f).map(|c| is_zero_mor(inst, &c)).unwrap_or(false)
}

/// `g∘f = 0`, `h∘g = 0` and `Σf∘h = 0`.
pub fn check_vanishing<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Checks {
    let mut c = Checks::new();
    c.expect(anchors::VANISH_GF, vanishes(inst, &t.g, &t.f), || "g∘f ≠ 0".into());
    c.expect(anchors::VANISH_HG, vanishes(inst, &t.h, &t.g), || "h∘g ≠ 0".into());
    c.expect(anchors::VANISH_FH, vanishes(inst, &inst.suspend_mor(&t.f), &t.h), || "Σf∘h ≠ 0".into());
    c
}

/// Rotating then unrotating, and the reverse, give back `t`, and the
/// unrotation of a triangle is a triangle.
pub fn check_rotations<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let same = |a: &Triangle<I::Mor>| {
        inst.mor_equal(&a.f, &t.f) && inst.mor_equal(&a.g, &t.g) && inst.mor_equal(&a.h, &t.h)
    };
    let is_tri = inst.is_triangle(t);
    let r = rotate(inst, t);
    let u = unrotate(inst, t);
    c.expect(anchors::T4, inst.is_triangle(&r) == is_tri, || format!("rotation changed membership (was {is_tri})"));
    c.expect(anchors::UNROTATE, inst.is_triangle(&u) == is_tri, || {
        format!("unrotation changed membership (was {is_tri})")
    });
    c.expect(anchors::UNROTATE, same(&unrotate(inst, &r)) && same(&rotate(inst, &u)), || {
        "rotate and unrotate are not inverse".into()
    });
    c
}

/// Each of the three two-sign insertions of a triangle is a triangle.
pub fn check_signs<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Checks {
    let mut c = Checks::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let ok = insert_two_signs(inst, t, i, j).map(|s| inst.is_triangle(&s)).unwrap_or(false);
        c.expect(anchors::SIGNS, ok, || format!("signs at ({i}, {j}) break the triangle"));
    }
    c
}

/// Matrix of `b ↦ g∘b` from `Hom(w, source g)` to `Hom(w, target g)` in the
/// hom-space bases.
pub fn postcompose_matrix<I: Triangulated>(inst: &I, w: &I::Obj, g: &I::Mor) -> Result<ExactMatrix, CatError> {
    let dom = inst.hom_space(w, &inst.source(g));
    let cod = inst.hom_space(w, &inst.target(g));
    let cols = dom
        .basis
        .iter()
        .map(|b| Ok(cod.coordinates(inst, &inst.compose(g, b)?)))
        .collect::<Result<Vec<_>, CatError>>()?;
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    Ok(ExactMatrix::hstack(inst.field(), cod.dim(), &refs)?)
}

/// Matrix of `b ↦ b∘f` from `Hom(target f, w)` to `Hom(source f, w)`.
pub fn precompose_matrix<I: Triangulated>(inst: &I, w: &I::Obj, f: &I::Mor) -> Result<ExactMatrix, CatError> {
    let dom = inst.hom_space(&inst.target(f), w);
    let cod = inst.hom_space(&inst.source(f), w);
    let cols = dom
        .basis
        .iter()
        .map(|b| Ok(cod.coordinates(inst, &inst.compose(b, f)?)))
        .collect::<Result<Vec<_>, CatError>>()?;
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    Ok(ExactMatrix::hstack(inst.field(), cod.dim(), &refs)?)
}

fn exact_pair(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    (b * a).is_zero() && a.rank() + b.rank() == a.rows()
}

/// `Hom(w, −)` applied to `X → Y → Z → ΣX → ΣY` is exact at `Y`, `Z` and `ΣX`.
pub fn hom_exactness<I: Triangulated>(inst: &I, w: &I::Obj, t: &Triangle<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let sf = inst.negate(&inst.suspend_mor(&t.f));
    let maps = [&t.f, &t.g, &t.h, &sf];
    let names = ["Y", "Z", "ΣX"];
    let mats: Result<Vec<ExactMatrix>, CatError> = maps.iter().map(|m| postcompose_matrix(inst, w, m)).collect();
    match mats {
        Ok(mats) => {
            for k in 0..3 {
                let ok = exact_pair(&mats[k], &mats[k + 1]);
                c.expect(anchors::HOM_EXACT, ok, || format!("Hom(W,-) not exact at {}", names[k]));
            }
        }
        Err(e) => c.push(anchors::HOM_EXACT, false, format!("hom matrices: {e}")),
    }
    c
}

/// `Hom(−, w)` applied to `X → Y → Z → ΣX → ΣY` is exact at `Hom(Y, w)`,
/// `Hom(Z, w)` and `Hom(ΣX, w)`.
pub fn cohom_exactness<I: Triangulated>(inst: &I, w: &I::Obj, t: &Triangle<I::Mor>) -> Checks {
    let mut c = Checks::new();
    let sf = inst.negate(&inst.suspend_mor(&t.f));
    let maps = [&t.f, &t.g, &t.h, &sf];
    let mats: Result<Vec<ExactMatrix>, CatError> = maps.iter().map(|m| precompose_matrix(inst, w, m)).collect();
    match mats {
        Ok(mats) => {
            for k in 0..3 {
                let ok = exact_pair(&mats[k + 1], &mats[k]);
                c.expect(anchors::HOM_EXACT, ok, || format!("Hom(-,W) not exact at {}", ["Y", "Z", "ΣX"][k]));
            }
        }
        Err(e) => c.push(anchors::HOM_EXACT, false, format!("hom matrices: {e}")),
    }
    c
}

/// Whether `f` is an isomorphism, decided by the cone being a zero object.
pub fn iso_via_cone<I: Triangulated>(inst: &I, f: &I::Mor) -> bool {
    let c = inst.cone(f);
    inst.obj_iso(&inst.target(&c.g), &inst.zero_object()).is_some()
}

/// Cone of `f` is zero exactly when `f` has an inverse.
pub fn check_iso_criterion<I: Triangulated>(inst: &I, f: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let by_cone = iso_via_cone(inst, f);
    let by_inverse = inst.inverse(f).is_some();
    c.expect(anchors::ISO_CONE, by_cone == by_inverse, || {
        format!("cone zero: {by_cone}, invertible: {by_inverse}")
    });
    c
}

/// The cone triangle of `f` passes the candidate check, starts with `f`
/// and is a triangle.
pub fn check_cone<I: Triangulated>(inst: &I, f: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let t = inst.cone(f);
    let shape = check_candidate(inst, &t);
    c.expect(anchors::T2, shape.is_ok(), || format!("cone shape: {:?}", shape.clone().err()));
    c.expect(anchors::T2, inst.mor_equal(&t.f, f), || "cone does not start with f".into());
    c.expect(anchors::T2, inst.is_triangle(&t), || "cone is not a triangle".into());
    c
}

/// `C_{Σf} ≅ ΣC_f`.
pub fn check_cone_shift<I: Triangulated>(inst: &I, f: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let shifted = inst.target(&inst.cone(&inst.suspend_mor(f)).g);
    let cf = inst.target(&inst.cone(f).g);
    let ok = inst.obj_iso(&shifted, &inst.suspend_obj(&cf)).is_some();
    c.expect(anchors::CONE_SHIFT, ok, || {
        format!("{} ≇ Σ{}", inst.display_obj(&shifted), inst.display_obj(&cf))
    });
    c
}

/// An isomorphism `C_f → Z` from the instance cone onto `t`, if `t` is a
/// triangle; identity when `t` is the cone triangle itself.
pub fn cone_iso<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>) -> Result<(I::Mor, I::Mor), CatError> {
    let c = inst.cone(&t.f);
    if inst.target(&c.g) == inst.target(&t.g) && inst.mor_equal(&c.g, &t.g) && inst.mor_equal(&c.h, &t.h) {
        let id = inst.identity(&inst.target(&c.g));
        return Ok((id.clone(), id));
    }
    let phi = cone_comparison(inst, t).ok_or_else(|| CatError::NotATriangle("no comparison with the cone".into()))?;
    let inv = inst.inverse(&phi).ok_or_else(|| CatError::Construction("comparison map not invertible".into()))?;
    Ok((phi, inv))
}
