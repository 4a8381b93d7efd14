//! Drivers shared by the per-instance suites.
#![allow(dead_code)]

pub mod mutants;
pub mod roof;

use rand_chacha::ChaCha8Rng;
use tricat::category::{lincomb, path, Triangulated};
use tricat::report::{Checks, Report};
use tricat::toolkit::{validate_octahedron, Sampler};

pub fn describe(c: &Checks) -> String {
    c.failures().iter().take(10).map(|f| format!("{}: {:?}", f.anchor, f.detail)).collect::<Vec<_>>().join("\n")
}

pub fn assert_checks(c: &Checks) {
    assert!(c.all_passed(), "failing checks:\n{}", describe(c));
}

pub fn assert_report(r: &Report) {
    let bad: Vec<String> = r
        .entries
        .iter()
        .filter(|e| e.failed > 0)
        .map(|e| format!("{}: {} failed, e.g. {:?}", e.anchor, e.failed, e.counterexamples.first()))
        .collect();
    assert!(bad.is_empty(), "{} on {}:\n{}", r.command, r.instance, bad.join("\n"));
}

/// The laws every instance owes its callers, on one random configuration
/// `W --e--> X ==f,g==> Y --h--> Z`. Returns the names of the broken laws.
pub fn contract_laws<I: Triangulated, S: Sampler<I>>(inst: &I, s: &S, rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    let mut broken = Vec::new();
    let mut law = |name: &'static str, ok: bool| {
        if !ok {
            broken.push(name);
        }
    };
    let w = s.object(inst, rng);
    let x = s.object(inst, rng);
    let y = s.object(inst, rng);
    let z = s.object(inst, rng);
    let e = s.morphism(inst, &w, &x, rng);
    let f = s.morphism(inst, &x, &y, rng);
    let g = s.morphism(inst, &x, &y, rng);
    let h = s.morphism(inst, &y, &z, rng);
    let eq = |a: &I::Mor, b: &I::Mor| inst.mor_equal(a, b);
    let c = |a: &I::Mor, b: &I::Mor| inst.compose(a, b).unwrap();
    let add = |a: &I::Mor, b: &I::Mor| inst.add(a, b).unwrap();

    law("endpoints", inst.source(&f) == x && inst.target(&f) == y);
    law("associativity", eq(&c(&c(&h, &f), &e), &c(&h, &c(&f, &e))));
    law("left identity", eq(&c(&inst.identity(&y), &f), &f));
    law("right identity", eq(&c(&f, &inst.identity(&x)), &f));
    law("zero absorbs", eq(&c(&h, &inst.zero(&x, &y)), &inst.zero(&x, &z)));
    law("bilinear left", eq(&c(&h, &add(&f, &g)), &add(&c(&h, &f), &c(&h, &g))));
    law("bilinear right", eq(&c(&add(&f, &g), &e), &add(&c(&f, &e), &c(&g, &e))));
    law("additive inverse", eq(&add(&f, &inst.negate(&f)), &inst.zero(&x, &y)));
    let two = &inst.field().one() + &inst.field().one();
    law("scalars", eq(&inst.scale(&two, &f), &add(&f, &f)));

    law("suspension additive", eq(&inst.suspend_mor(&add(&f, &g)), &add(&inst.suspend_mor(&f), &inst.suspend_mor(&g))));
    law("suspension functorial", eq(&inst.suspend_mor(&c(&h, &f)), &c(&inst.suspend_mor(&h), &inst.suspend_mor(&f))));
    law("suspension of identity", eq(&inst.suspend_mor(&inst.identity(&x)), &inst.identity(&inst.suspend_obj(&x))));
    law("suspension endpoints", inst.source(&inst.suspend_mor(&f)) == inst.suspend_obj(&x));
    law("strict desuspension", inst.desuspend_obj(&inst.suspend_obj(&x)) == x && inst.suspend_obj(&inst.desuspend_obj(&x)) == x);
    law("desuspension of maps", eq(&inst.desuspend_mor(&inst.suspend_mor(&f)), &f));

    let t = inst.cone(&f);
    law("cone starts with f", eq(&t.f, &f) && inst.source(&t.f) == x && inst.target(&t.f) == y);
    law(
        "cone shape",
        inst.source(&t.g) == y && inst.target(&t.g) == inst.source(&t.h) && inst.target(&t.h) == inst.suspend_obj(&x),
    );
    law("cone is a triangle", inst.is_triangle(&t));
    match inst.octahedron(&f, &h) {
        Ok(o) => law("octahedron", validate_octahedron(inst, &o).all_passed()),
        Err(_) => law("octahedron", false),
    }

    let b = inst.biproduct(&x, &y);
    law("biproduct", eq(&c(&b.p1, &b.i1), &inst.identity(&x)) && eq(&c(&b.p2, &b.i1), &inst.zero(&x, &y)));
    law("biproduct sum", eq(&add(&c(&b.i1, &b.p1), &c(&b.i2, &b.p2)), &inst.identity(&b.object)));

    // A map through a zero object is zero, and changing a representative by
    // such a map changes nothing downstream.
    let cid = inst.cone(&inst.identity(&x));
    let zobj = inst.target(&cid.g);
    law("cone of identity is zero", inst.is_zero_object(&zobj));
    let through = c(&s.morphism(inst, &zobj, &y, rng), &cid.g);
    let f2 = add(&c(&through, &inst.identity(&x)), &f);
    law("null maps vanish", eq(&f2, &f));
    law("congruence", eq(&c(&h, &f2), &c(&h, &f)) && eq(&c(&f2, &e), &c(&f, &e)) && eq(&add(&f2, &g), &add(&f, &g)));

    let hom = inst.hom_space(&x, &y);
    let coords = hom.coordinates(inst, &f);
    law("hom coordinates", coords.rows() == hom.dim() && eq(&lincomb(inst, &coords, &hom.basis, &x, &y), &f));
    law("coordinates linear", &coords + &hom.coordinates(inst, &g) == hom.coordinates(inst, &add(&f, &g)));
    law("coordinates detect equality", (coords == hom.coordinates(inst, &g)) == eq(&f, &g));

    let (a, a_inv) = s.automorphism(inst, &x, rng);
    law("sampled automorphism", eq(&c(&a_inv, &a), &inst.identity(&x)) && eq(&c(&a, &a_inv), &inst.identity(&x)));
    law("inverse", inst.inverse(&a).map(|i| eq(&i, &a_inv)).unwrap_or(false));
    law("path", eq(&path(inst, &[&h, &f, &e]).unwrap(), &c(&h, &c(&f, &e))));
    law("self iso", inst.obj_iso(&x, &x).map(|(i, j)| eq(&c(&j, &i), &inst.identity(&x))).unwrap_or(false));
    broken
}
