//! Randomised verification of the axioms and their consequences.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{check_candidate, Triangle, TriangleMorphism, Triangulated};
use crate::report::{anchors, Checks, Report};

use super::basic::{
    check_cone, check_cone_shift, check_iso_criterion, check_rotations, check_signs, check_vanishing, cohom_exactness,
    hom_exactness, rotate,
};
use super::biproducts::{check_biproduct, check_splitting, split_biproduct, sum_triangles};
use super::filling::{
    check_filling, check_filling_iso, filling_morphism, validate_instance_octahedron, weak_cokernel_extend,
    weak_kernel_lift,
};
use super::grid::{biproduct_from_axioms, check_biproduct_from_axioms, check_grid, three_by_three};
use super::puppe::{braid, check_braid, check_puppe, puppe};
use super::triple::{check_triple, triple_composition};
use super::op::Op;

/// Random objects, morphisms and automorphisms of an instance.
pub trait Sampler<I: Triangulated>: Sync {
    fn object(&self, inst: &I, rng: &mut ChaCha8Rng) -> I::Obj;
    fn morphism(&self, inst: &I, x: &I::Obj, y: &I::Obj, rng: &mut ChaCha8Rng) -> I::Mor;
    /// An automorphism of `x` with its inverse.
    fn automorphism(&self, inst: &I, x: &I::Obj, rng: &mut ChaCha8Rng) -> (I::Mor, I::Mor);
}

/// Samples the opposite category through the inner sampler.
pub struct OpSampler<S>(pub S);

impl<I: Triangulated, S: Sampler<I>> Sampler<Op<I>> for OpSampler<S> {
    fn object(&self, inst: &Op<I>, rng: &mut ChaCha8Rng) -> I::Obj {
        self.0.object(inst.inner(), rng)
    }

    fn morphism(&self, inst: &Op<I>, x: &I::Obj, y: &I::Obj, rng: &mut ChaCha8Rng) -> I::Mor {
        self.0.morphism(inst.inner(), y, x, rng)
    }

    fn automorphism(&self, inst: &Op<I>, x: &I::Obj, rng: &mut ChaCha8Rng) -> (I::Mor, I::Mor) {
        self.0.automorphism(inst.inner(), x, rng)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; `0` uses the available parallelism.
    pub threads: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { samples: 50, seed: 0, threads: 0 }
    }
}

/// The rng for sample `index`, independent of scheduling.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// All checks for one sample: `X --f--> Y --g--> Z` drawn at random.
pub fn verify_sample<I: Triangulated, S: Sampler<I>>(inst: &I, sampler: &S, rng: &mut ChaCha8Rng) -> Checks {
    let mut c = Checks::new();
    let x = sampler.object(inst, rng);
    let y = sampler.object(inst, rng);
    let z = sampler.object(inst, rng);
    let w = sampler.object(inst, rng);
    let f = sampler.morphism(inst, &x, &y, rng);
    let g = sampler.morphism(inst, &y, &z, rng);
    let zero = inst.zero_object();

    let id_tri = Triangle::new(inst.identity(&x), inst.zero(&x, &zero), inst.zero(&zero, &inst.suspend_obj(&x)));
    c.expect(anchors::T1, inst.is_triangle(&id_tri), || format!("identity triangle on {}", inst.display_obj(&x)));

    c.extend(check_cone(inst, &f));
    let t = inst.cone(&f);
    c.extend(check_vanishing(inst, &t));

    let cf = inst.target(&t.g);
    let (a, a_inv) = sampler.automorphism(inst, &x, rng);
    let (b, b_inv) = sampler.automorphism(inst, &y, rng);
    let (cc, cc_inv) = sampler.automorphism(inst, &cf, rng);
    let conj = (|| {
        Some(Triangle::new(
            crate::category::path(inst, &[&b, &t.f, &a_inv]).ok()?,
            crate::category::path(inst, &[&cc, &t.g, &b_inv]).ok()?,
            crate::category::path(inst, &[&inst.suspend_mor(&a), &t.h, &cc_inv]).ok()?,
        ))
    })();
    c.expect(anchors::T3, conj.map(|t2| inst.is_triangle(&t2)).unwrap_or(false), || {
        "triangle conjugated by automorphisms is not a triangle".into()
    });

    c.expect(anchors::T4, inst.is_triangle(&rotate(inst, &t)), || "rotated cone is not a triangle".into());
    c.extend(check_rotations(inst, &t));
    c.extend(check_signs(inst, &t));

    match inst.octahedron(&f, &g) {
        Ok(o) => c.extend(validate_instance_octahedron(inst, &o)),
        Err(e) => c.push(anchors::T5, false, format!("octahedron failed: {e}")),
    }

    c.extend(check_cone_shift(inst, &f));
    c.extend(check_iso_criterion(inst, &f));
    c.extend(check_iso_criterion(inst, &a));

    let tg = inst.cone(&g);
    match sum_triangles(inst, &t, &tg) {
        Ok(s) => {
            c.expect(anchors::SUM, inst.is_triangle(&s.triangle), || "sum of cones is not a triangle".into());
            c.extend(check_biproduct(inst, &x, &y, &s.x, anchors::ADDITIVE));
        }
        Err(e) => c.push(anchors::SUM, false, format!("sum failed: {e}")),
    }

    c.extend(hom_exactness(inst, &w, &t));
    c.extend(check_additive(inst, &f, rng, sampler));
    c.extend(check_strict_shift(inst, &x, &f));
    c
}

/// Bilinearity of composition and additivity of `Σ` on sampled maps.
fn check_additive<I: Triangulated, S: Sampler<I>>(
    inst: &I,
    f: &I::Mor,
    rng: &mut ChaCha8Rng,
    sampler: &S,
) -> Checks {
    let mut c = Checks::new();
    let x = inst.source(f);
    let y = inst.target(f);
    let f2 = sampler.morphism(inst, &x, &y, rng);
    let w = sampler.object(inst, rng);
    let e = sampler.morphism(inst, &y, &w, rng);
    let ok = (|| {
        let sum = inst.add(f, &f2).ok()?;
        let lhs = inst.compose(&e, &sum).ok()?;
        let rhs = inst.add(&inst.compose(&e, f).ok()?, &inst.compose(&e, &f2).ok()?).ok()?;
        let shift = inst.mor_equal(
            &inst.suspend_mor(&sum),
            &inst.add(&inst.suspend_mor(f), &inst.suspend_mor(&f2)).ok()?,
        );
        Some(inst.mor_equal(&lhs, &rhs) && shift)
    })()
    .unwrap_or(false);
    c.expect(anchors::ADDITIVE, ok, || "composition or Σ is not additive".into());
    c
}

fn check_strict_shift<I: Triangulated>(inst: &I, x: &I::Obj, f: &I::Mor) -> Checks {
    let mut c = Checks::new();
    let sx = inst.suspend_obj(x);
    let ok = inst.desuspend_obj(&sx) == *x
        && inst.suspend_obj(&inst.desuspend_obj(x)) == *x
        && inst.mor_equal(&inst.desuspend_mor(&inst.suspend_mor(f)), f)
        && inst.mor_equal(&inst.suspend_mor(&inst.identity(x)), &inst.identity(&sx));
    c.expect(anchors::STRICT_SHIFT, ok, || "Σ and Σ⁻¹ are not strictly inverse".into());
    let t = inst.cone(f);
    c.expect(anchors::STRICT_SHIFT, check_candidate(inst, &t).is_ok(), || "cone ends outside Σ of its source".into());
    c
}

/// The derived constructions on one random sample: fillings, weak
/// (co)kernels, splittings, biproducts from the axioms, the 3×3 lemma,
/// triple composition, braids and Puppe sequences.
pub fn constructions_sample<I: Triangulated, S: Sampler<I>>(inst: &I, s: &S, rng: &mut ChaCha8Rng) -> Checks {
    let mut all = Checks::new();
    let x = s.object(inst, rng);
    let y = s.object(inst, rng);
    let z = s.object(inst, rng);
    let w = s.object(inst, rng);
    let f = s.morphism(inst, &x, &y, rng);
    let g = s.morphism(inst, &y, &z, rng);
    let h = s.morphism(inst, &z, &w, rng);
    let fail = |c: &mut Checks, anchor: &str, e: crate::category::CatError| c.push(anchor, false, format!("{e}"));

    let (a, _) = s.automorphism(inst, &x, rng);
    match inst.compose(&f, &a) {
        Ok(fa) => {
            let (t1, t2) = (inst.cone(&fa), inst.cone(&f));
            match filling_morphism(inst, &t1, &t2, &a, &inst.identity(&y)) {
                Ok(m) => {
                    let tm = TriangleMorphism { source: t1, target: t2, a, b: inst.identity(&y), c: m };
                    all.extend(check_filling(inst, &tm));
                    all.extend(check_filling_iso(inst, &tm));
                }
                Err(e) => fail(&mut all, anchors::FILLING, e),
            }
        }
        Err(e) => fail(&mut all, anchors::FILLING, e),
    }

    let t = inst.cone(&f);
    let ok = weak_cokernel_extend(inst, &t, &t.g)
        .ok()
        .and_then(|e| inst.compose(&e, &t.g).ok())
        .map(|eg| inst.mor_equal(&eg, &t.g))
        .unwrap_or(false);
    all.expect(anchors::WEAK_COKERNEL, ok, || "g does not extend along itself".into());
    let ok = weak_kernel_lift(inst, &t, &f)
        .ok()
        .and_then(|l| inst.compose(&t.f, &l).ok())
        .map(|fl| inst.mor_equal(&fl, &f))
        .unwrap_or(false);
    all.expect(anchors::WEAK_KERNEL, ok, || "f does not lift through itself".into());

    let b = inst.biproduct(&x, &y);
    match split_biproduct(inst, &b.i1, &b.p1) {
        Ok(sp) => all.extend(check_splitting(inst, &b.i1, &sp)),
        Err(e) => fail(&mut all, anchors::SPLIT, e),
    }
    match biproduct_from_axioms(inst, &x, &y) {
        Ok((grid, bp)) => all.extend(check_biproduct_from_axioms(inst, &x, &y, &grid, &bp)),
        Err(e) => fail(&mut all, anchors::BIPRODUCT_AXIOMS, e),
    }
    match inst.compose(&g, &f) {
        Ok(gf) => {
            match three_by_three(inst, &inst.cone(&f), &inst.cone(&gf), &inst.cone(&inst.identity(&x)), &inst.cone(&g)) {
                Ok(grid) => all.extend(check_grid(inst, &grid)),
                Err(e) => fail(&mut all, anchors::GRID_LINES, e),
            }
        }
        Err(e) => fail(&mut all, anchors::GRID_LINES, e),
    }
    match triple_composition(inst, &f, &g, &h) {
        Ok(tc) => all.extend(check_triple(inst, &tc)),
        Err(e) => fail(&mut all, anchors::TRIPLE, e),
    }
    match braid(inst, &f, &g) {
        Ok(br) => all.extend(check_braid(inst, &br)),
        Err(e) => fail(&mut all, anchors::BRAID, e),
    }
    all.extend(check_puppe(inst, &puppe(inst, &t, 3, 3)));
    all.extend(cohom_exactness(inst, &w, &t));
    all
}

/// Evaluates `run(i)` for every sample index on worker threads and returns
/// the results in index order.
pub fn run_indexed<F>(samples: usize, threads: usize, run: F) -> Vec<Checks>
where
    F: Fn(usize) -> Checks + Sync,
{
    let threads = if threads == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        threads
    }
    .clamp(1, samples.max(1));
    if threads == 1 {
        return (0..samples).map(&run).collect();
    }
    let run = &run;
    let mut results: Vec<(usize, Checks)> = Vec::with_capacity(samples);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || (t..samples).step_by(threads).map(|i| (i, run(i))).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            results.extend(h.join().expect("verification worker panicked"));
        }
    });
    results.sort_by_key(|(i, _)| *i);
    results.into_iter().map(|(_, c)| c).collect()
}

/// Runs [`verify_sample`] for every sample index and folds the results into
/// a report in index order.
pub fn verify_axioms<I: Triangulated, S: Sampler<I>>(inst: &I, sampler: &S, config: VerifyConfig) -> Report {
    let results = run_indexed(config.samples, config.threads, |i| {
        verify_sample(inst, sampler, &mut sample_rng(config.seed, i))
    });
    let mut report = Report::new("verify-axioms", &inst.name(), Some(config.seed));
    for c in &results {
        report.absorb(c);
    }
    report.set_data("samples", config.samples.into());
    report
}

/// Runs [`constructions_sample`] for every sample index.
pub fn verify_constructions<I: Triangulated, S: Sampler<I>>(inst: &I, sampler: &S, config: VerifyConfig) -> Report {
    let results = run_indexed(config.samples, config.threads, |i| {
        constructions_sample(inst, sampler, &mut sample_rng(config.seed, i))
    });
    let mut report = Report::new("constructions", &inst.name(), Some(config.seed));
    for c in &results {
        report.absorb(c);
    }
    report.set_data("samples", config.samples.into());
    report
}
