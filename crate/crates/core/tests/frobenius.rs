mod common;

use proptest::prelude::*;
use tricat::category::{Triangle, TriangleMorphism, Triangulated};
use tricat::frobenius::{FrobeniusInstance, FrobeniusSampler, SqZeroModule};
use tricat::linalg::{ExactMatrix, Field};
use tricat::toolkit::{
    check_filling, check_filling_iso, filling_morphism, sample_rng, suspend_triangle, verify_axioms, verify_constructions,
    Sampler, VerifyConfig,
};

const Q: Field = Field::Rational;

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn m(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(Q, rows)
}

/// A module with `x² = 0` of the given rank, in a scrambled basis.
fn scrambled(field: Field, a: usize, b: usize, seed: u64) -> SqZeroModule {
    let n = 2 * a + b;
    let mut rng = sample_rng(seed, 0);
    let p = loop {
        let p = ExactMatrix::random(field, n, n, &mut rng);
        if p.is_invertible() {
            break p;
        }
    };
    let x = SqZeroModule::normal(field, a, b);
    SqZeroModule::new(&(&p * x.x()) * &p.inverse().unwrap()).unwrap()
}

#[test]
fn decomposition_examples() {
    let d = SqZeroModule::new(ExactMatrix::zeros(Q, 3, 3)).unwrap().decompose();
    assert_eq!((d.free_rank, d.trivial_rank), (0, 3));
    let d = SqZeroModule::new(m(&[&[0, 0], &[1, 0]])).unwrap().decompose();
    assert_eq!((d.free_rank, d.trivial_rank), (1, 0));
    let x = scrambled(Q, 2, 1, 1);
    assert_eq!(x.dim(), 5);
    assert_eq!(x.x().rank(), 2);
    let d = x.decompose();
    assert_eq!((d.free_rank, d.trivial_rank), (2, 1));
    // The basis conjugates x into the normal form.
    let normal = SqZeroModule::normal(Q, 2, 1);
    assert_eq!(&(&d.basis.inverse().unwrap() * x.x()) * &d.basis, *normal.x());
    assert!(SqZeroModule::new(m(&[&[1, 0], &[0, 0]])).is_err());
}

#[test]
fn injective_hulls() {
    let k = SqZeroModule::trivial(Q, 1);
    let (hull, emb) = k.injective_hull();
    assert_eq!(hull, SqZeroModule::free(Q, 1));
    // 1 ↦ x·generator.
    assert_eq!(emb, m(&[&[0], &[1]]));

    let free = SqZeroModule::free(Q, 2);
    let (hull, emb) = free.injective_hull();
    assert_eq!(hull, free);
    assert_eq!(emb, ExactMatrix::identity(Q, 4));

    let mixed = SqZeroModule::normal(Q, 1, 1);
    let (hull, emb) = mixed.injective_hull();
    assert_eq!(hull, SqZeroModule::free(Q, 2));
    assert!(mixed.is_module_map(&hull, &emb));
    assert_eq!(emb.rank(), 3);

    // In another basis a free module still embeds isomorphically.
    let free = scrambled(Q, 2, 0, 7);
    let (hull, emb) = free.injective_hull();
    assert_eq!(hull, SqZeroModule::free(Q, 2));
    assert!(free.is_module_map(&hull, &emb) && emb.is_invertible());
}

#[test]
fn stable_equality_examples() {
    let free = SqZeroModule::free(Q, 1);
    let id = ExactMatrix::identity(Q, 2);
    assert!(free.stable_equal(&free, &id, &id));
    assert!(free.stable_equal(&free, &id, &ExactMatrix::zeros(Q, 2, 2)));
    let k = SqZeroModule::trivial(Q, 1);
    assert!(!k.stable_equal(&k, &m(&[&[1]]), &m(&[&[0]])));
    // k → F → k, through the socle, is stably zero.
    let through = &m(&[&[1, 0]]) * &m(&[&[0], &[1]]);
    assert!(k.stable_equal(&k, &through, &m(&[&[0]])));
}

#[test]
fn suspension_examples() {
    let (s, _) = SqZeroModule::free(Q, 1).suspend();
    assert_eq!(s.dim(), 0);
    let (s, pi) = SqZeroModule::trivial(Q, 1).suspend();
    let d = s.decompose();
    assert_eq!((d.free_rank, d.trivial_rank), (0, 1));
    assert_eq!(pi.shape(), (1, 2));
    let (s, _) = scrambled(Q, 2, 3, 4).suspend();
    let d = s.decompose();
    assert_eq!((d.free_rank, d.trivial_rank), (0, 3));
    let (ds, inc) = SqZeroModule::trivial(Q, 2).desuspend();
    assert_eq!((ds.decompose().free_rank, ds.decompose().trivial_rank), (0, 2));
    assert_eq!(inc.rank(), 2);
}

#[test]
fn triangles_from_short_exact_sequences() {
    let fr = FrobeniusInstance::new(Q);
    let k = SqZeroModule::trivial(Q, 1);
    let free = SqZeroModule::free(Q, 1);
    // 0 → k → F → k → 0 through the socle; the connecting map is invertible.
    let t = fr.ses_to_triangle(&k, &free, &k, &m(&[&[0], &[1]]), &m(&[&[1, 0]])).unwrap();
    assert!(fr.is_triangle(&t));
    assert!(fr.inverse(&t.h).is_some());

    // Split: 0 → k → k ⊕ k → k → 0 has a stably zero connecting map.
    let kk = SqZeroModule::trivial(Q, 2);
    let t = fr.ses_to_triangle(&k, &kk, &k, &m(&[&[1], &[0]]), &m(&[&[0, 1]])).unwrap();
    assert!(fr.is_triangle(&t));
    assert!(fr.mor_equal(&t.h, &fr.zero(&fr.source(&t.h), &fr.target(&t.h))));

    assert!(fr.ses_to_triangle(&k, &kk, &k, &m(&[&[1], &[0]]), &m(&[&[1, 0]])).is_err());
}

#[test]
fn suspended_triangle_matches_cone_of_suspension() {
    let fr = FrobeniusInstance::new(f3());
    let s = FrobeniusSampler { max_dim: 6 };
    for i in 0..20 {
        let mut rng = sample_rng(8, i);
        let (x, y) = (s.object(&fr, &mut rng), s.object(&fr, &mut rng));
        let f = s.morphism(&fr, &x, &y, &mut rng);
        let st = suspend_triangle(&fr, &fr.cone(&f));
        assert!(fr.is_triangle(&st));
        let cone = fr.cone(&st.f);
        let (a, b) = (fr.identity(&fr.source(&st.f)), fr.identity(&fr.target(&st.f)));
        let c = filling_morphism(&fr, &cone, &st, &a, &b).unwrap();
        let tm = TriangleMorphism { source: cone, target: st, a, b, c };
        assert!(check_filling(&fr, &tm).all_passed() && check_filling_iso(&fr, &tm).all_passed());
    }
}

#[test]
fn stable_hom_dimensions() {
    let fr = FrobeniusInstance::new(f3());
    for a1 in 0..=3 {
        for b1 in 0..=3 {
            for a2 in 0..=3 {
                for b2 in 0..=3 {
                    let (x, y) = (fr.object(a1, b1), fr.object(a2, b2));
                    assert_eq!(fr.hom_space(&x, &y).dim(), b1 * b2, "({a1},{b1}) → ({a2},{b2})");
                }
            }
        }
    }
}

#[test]
fn axiom_suites_pass() {
    // Rational arithmetic is an order of magnitude slower, so Q gets fewer samples.
    for (field, axioms, constructions) in [(Q, 10, 3), (f3(), 30, 10), (Field::prime(2).unwrap(), 30, 10)] {
        let fr = FrobeniusInstance::new(field);
        let cfg = VerifyConfig { samples: axioms, seed: 5, threads: 0 };
        common::assert_report(&verify_axioms(&fr, &FrobeniusSampler { max_dim: 6 }, cfg));
        common::assert_report(&verify_constructions(&fr, &FrobeniusSampler { max_dim: 5 }, VerifyConfig { samples: constructions, ..cfg }));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decomposition_is_a_normal_form(a in 0usize..4, b in 0usize..4, seed in any::<u64>()) {
        let x = scrambled(f3(), a, b, seed);
        let d = x.decompose();
        prop_assert_eq!((d.free_rank, d.trivial_rank), (a, b));
        prop_assert_eq!(x.homology_dim(), b);
        let (hull, emb) = x.injective_hull();
        prop_assert_eq!(hull.dim(), 2 * (a + b));
        prop_assert!(x.is_module_map(&hull, &emb) && emb.rank() == x.dim());
        let (s, pi) = x.suspend();
        prop_assert_eq!(s.decompose().trivial_rank, b);
        prop_assert!(hull.is_module_map(&s, &pi) && (&pi * &emb).is_zero());
        let (ds, _) = x.desuspend();
        prop_assert_eq!((ds.decompose().free_rank, ds.decompose().trivial_rank), (0, b));
        prop_assert_eq!(SqZeroModule::from_json(&x.to_json()).unwrap(), x);
    }

    /// Free modules are zero, and the stable category is vect under
    /// N(a, b) ↦ K^b, suspension included.
    #[test]
    fn free_modules_vanish_and_suspension_preserves_homs(seed in any::<u64>()) {
        let fr = FrobeniusInstance::new(f3());
        let s = FrobeniusSampler { max_dim: 6 };
        let mut rng = sample_rng(seed, 0);
        let (x, y) = (s.object(&fr, &mut rng), s.object(&fr, &mut rng));
        let free = fr.object(x.free_rank, 0);
        prop_assert!(fr.is_zero_object(&free));
        prop_assert!(fr.is_zero_object(&fr.suspend_obj(&free)));
        prop_assert!(fr.obj_iso(&fr.suspend_obj(&fr.object(0, 1)), &fr.object(0, 1)).is_some());
        // ΣA = I(A)/A computed on modules, then put in normal form.
        let sigma = |n| fr.normalize(&fr.module(n).suspend().0).0;
        let (sx, sy) = (sigma(&x), sigma(&y));
        prop_assert_eq!(sx.free_rank, 0);
        prop_assert_eq!(fr.hom_space(&sx, &sy).dim(), fr.hom_space(&x, &y).dim());
        prop_assert!(fr.obj_iso(&sx, &fr.suspend_obj(&x)).is_some());
        prop_assert_eq!(fr.hom_space(&x, &y).dim(), x.trivial_rank * y.trivial_rank);
        let f = s.morphism(&fr, &x, &y, &mut rng);
        let g = s.morphism(&fr, &x, &y, &mut rng);
        prop_assert_eq!(fr.mor_equal(&f, &g), fr.mor_equal(&fr.suspend_mor(&f), &fr.suspend_mor(&g)));
    }

    #[test]
    fn short_exact_sequences_give_triangles(seed in any::<u64>()) {
        let field = f3();
        let mut rng = sample_rng(seed, 0);
        let s = FrobeniusSampler { max_dim: 4 };
        let fr = FrobeniusInstance::new(field);
        let (na, nc) = (s.object(&fr, &mut rng), s.object(&fr, &mut rng));
        let (a, c) = (fr.module(&na), fr.module(&nc));
        // An extension of C by A: B = A ⊕ C with x_B = [[x_A, e], [0, x_C]],
        // where x_A e + e x_C = 0.
        let es = {
            let mut sys = tricat::linalg::LinearSystem::new(field);
            let u = sys.unknown(a.dim(), c.dim());
            let (ia, ic) = (ExactMatrix::identity(field, a.dim()), ExactMatrix::identity(field, c.dim()));
            sys.equation(&[(a.x(), u, &ic), (&ia, u, c.x())], &ExactMatrix::zeros(field, a.dim(), c.dim())).unwrap();
            sys.solution_space().unwrap()
        };
        let mut e = ExactMatrix::zeros(field, a.dim(), c.dim());
        for k in 0..es.dim() {
            let coeff = field.random_element(&mut rng);
            e = &e + &es.kernel_parts(k).remove(0).scale(&coeff).unwrap();
        }
        let n = a.dim() + c.dim();
        let xb = ExactMatrix::block(field, &[vec![a.x(), &e], vec![&ExactMatrix::zeros(field, c.dim(), a.dim()), c.x()]]).unwrap();
        let b = SqZeroModule::new(xb).unwrap();
        let i = ExactMatrix::vstack(field, a.dim(), &[&ExactMatrix::identity(field, a.dim()), &ExactMatrix::zeros(field, c.dim(), a.dim())]).unwrap();
        let p = ExactMatrix::hstack(field, c.dim(), &[&ExactMatrix::zeros(field, c.dim(), a.dim()), &ExactMatrix::identity(field, c.dim())]).unwrap();
        prop_assert_eq!(b.dim(), n);
        let t: Triangle<_> = fr.ses_to_triangle(&a, &b, &c, &i, &p).unwrap();
        prop_assert!(fr.is_triangle(&t));
    }
}
