//! Splittings, biproduct equations and direct sums of triangles.

use crate::category::{path, Biproduct, CatError, Triangle, Triangulated};
use crate::report::{anchors, Checks};

use super::basic::composite_is;
use super::filling::octahedron_for;

/// The biproduct equations for `b` as a sum of `x` and `y`.
pub fn check_biproduct<I: Triangulated>(
    inst: &I,
    x: &I::Obj,
    y: &I::Obj,
    b: &Biproduct<I::Obj, I::Mor>,
    anchor: &str,
) -> Checks {
    let mut c = Checks::new();
    let fits = inst.source(&b.i1) == *x
        && inst.source(&b.i2) == *y
        && inst.target(&b.p1) == *x
        && inst.target(&b.p2) == *y
        && [&b.i1, &b.i2].iter().all(|m| inst.target(m) == b.object)
        && [&b.p1, &b.p2].iter().all(|m| inst.source(m) == b.object);
    c.expect(anchor, fits, || "biproduct maps have the wrong endpoints".into());
    if !fits {
        return c;
    }
    c.expect(anchor, composite_is(inst, &b.p1, &b.i1, &inst.identity(x)), || "p1∘i1 ≠ 1".into());
    c.expect(anchor, composite_is(inst, &b.p2, &b.i2, &inst.identity(y)), || "p2∘i2 ≠ 1".into());
    c.expect(anchor, composite_is(inst, &b.p1, &b.i2, &inst.zero(y, x)), || "p1∘i2 ≠ 0".into());
    c.expect(anchor, composite_is(inst, &b.p2, &b.i1, &inst.zero(x, y)), || "p2∘i1 ≠ 0".into());
    let sum = inst
        .compose(&b.i1, &b.p1)
        .and_then(|a| inst.add(&a, &inst.compose(&b.i2, &b.p2)?));
    c.expect(
        anchor,
        sum.map(|s| inst.mor_equal(&s, &inst.identity(&b.object))).unwrap_or(false),
        || "i1∘p1 + i2∘p2 ≠ 1".into(),
    );
    c
}

/// A split monomorphism `f: X → Y` with retraction `g` exhibits `Y` as a
/// biproduct of `X` and the cone `C_f`.
#[derive(Clone, Debug)]
pub struct Splitting<O, M> {
    pub cone: O,
    pub biproduct: Biproduct<O, M>,
}

/// Splits `Y ≅ X ⊕ C_f` for `f: X → Y`, `g: Y → X` with `g∘f = 1`.
///
/// The octahedron on `(f, g)` has a zero composite cone, so its third
/// map `k'': C_g → ΣC_f` is invertible; the complement inclusion is
/// `Σ⁻¹(g''∘k''⁻¹)` and the complement projection is `f'`.
pub fn split_biproduct<I: Triangulated>(inst: &I, f: &I::Mor, g: &I::Mor) -> Result<Splitting<I::Obj, I::Mor>, CatError> {
    let x = inst.source(f);
    let gf = inst.compose(g, f)?;
    if !inst.mor_equal(&gf, &inst.identity(&x)) {
        return Err(CatError::PreconditionViolated("g∘f ≠ 1".into()));
    }
    let zero = inst.zero_object();
    let tf = inst.cone(f);
    let tg = inst.cone(g);
    let th = Triangle::new(gf, inst.zero(&x, &zero), inst.zero(&zero, &inst.suspend_obj(&x)));
    let oct = octahedron_for(inst, &tf, &tg, &th)?;
    let k2_inv = inst
        .inverse(&oct.k2)
        .ok_or_else(|| CatError::Construction("k'' is not invertible".into()))?;
    let i2 = inst.desuspend_mor(&inst.compose(&tg.h, &k2_inv)?);
    let cf = inst.target(&tf.g);
    let biproduct = Biproduct { object: inst.target(f), i1: f.clone(), i2, p1: g.clone(), p2: tf.g.clone() };
    Ok(Splitting { cone: cf, biproduct })
}

/// Componentwise direct sum of two triangles.
#[derive(Clone, Debug)]
pub struct SumTriangle<O, M> {
    pub triangle: Triangle<M>,
    pub x: Biproduct<O, M>,
    pub y: Biproduct<O, M>,
    pub z: Biproduct<O, M>,
}

/// `(f1 ⊕ f2, g1 ⊕ g2, h1 ⊕ h2)` on the instance biproducts, with the last
/// map landing in `Σ(X1 ⊕ X2)` through `Σi_{X1}`, `Σi_{X2}`.
pub fn sum_triangles<I: Triangulated>(
    inst: &I,
    t1: &Triangle<I::Mor>,
    t2: &Triangle<I::Mor>,
) -> Result<SumTriangle<I::Obj, I::Mor>, CatError> {
    let x = inst.biproduct(&inst.source(&t1.f), &inst.source(&t2.f));
    let y = inst.biproduct(&inst.source(&t1.g), &inst.source(&t2.g));
    let z = inst.biproduct(&inst.source(&t1.h), &inst.source(&t2.h));
    // out1∘m1∘p1 + out2∘m2∘p2 on the source biproduct `a`.
    let sum = |m1: &I::Mor, m2: &I::Mor, a: &Biproduct<I::Obj, I::Mor>, out1: &I::Mor, out2: &I::Mor| {
        let first = path(inst, &[out1, m1, &a.p1])?;
        let second = path(inst, &[out2, m2, &a.p2])?;
        inst.add(&first, &second)
    };
    let f = sum(&t1.f, &t2.f, &x, &y.i1, &y.i2)?;
    let g = sum(&t1.g, &t2.g, &y, &z.i1, &z.i2)?;
    let h = sum(&t1.h, &t2.h, &z, &inst.suspend_mor(&x.i1), &inst.suspend_mor(&x.i2))?;
    Ok(SumTriangle { triangle: Triangle::new(f, g, h), x, y, z })
}

/// Biproduct equations for a splitting of `f`.
pub fn check_splitting<I: Triangulated>(inst: &I, f: &I::Mor, s: &Splitting<I::Obj, I::Mor>) -> Checks {
    check_biproduct(inst, &inst.source(f), &s.cone, &s.biproduct, anchors::SPLIT)
}
