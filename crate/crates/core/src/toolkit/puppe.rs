//! Long sequences obtained by rotating a triangle, and the braid of four
//! triangles from one octahedron.

use crate::category::{CatError, Octahedron, Triangle, Triangulated};
use crate::report::{anchors, Checks};

use super::basic::{negate_triangle, square_commutes};
use super::filling::validate_octahedron;

/// `… → Σ⁻¹Z → X → Y → Z → ΣX → ΣY → …` with the base triangle at
/// `maps[base..base + 3]`.
///
/// Extending to the right applies `Σ` to the map three places back,
/// extending to the left applies `Σ⁻¹` to the map three places ahead.
/// Windows of three consecutive maps alternate between triangles (at even
/// offsets from the base) and negatives of triangles.
#[derive(Clone, Debug)]
pub struct PuppeSequence<M> {
    pub maps: Vec<M>,
    pub base: usize,
}

pub fn puppe<I: Triangulated>(inst: &I, t: &Triangle<I::Mor>, left: usize, right: usize) -> PuppeSequence<I::Mor> {
    let mut maps: Vec<I::Mor> = vec![t.f.clone(), t.g.clone(), t.h.clone()];
    for _ in 0..right {
        let next = inst.suspend_mor(&maps[maps.len() - 3]);
        maps.push(next);
    }
    let mut front: Vec<I::Mor> = Vec::with_capacity(left);
    for i in 0..left {
        let ahead = if i < 3 { &maps[2 - i] } else { &front[i - 3] };
        front.push(inst.desuspend_mor(ahead));
    }
    front.reverse();
    front.extend(maps);
    PuppeSequence { maps: front, base: left }
}

impl<M: Clone> PuppeSequence<M> {
    /// The three maps starting at `i`.
    pub fn window(&self, i: usize) -> Triangle<M> {
        Triangle::new(self.maps[i].clone(), self.maps[i + 1].clone(), self.maps[i + 2].clone())
    }

    /// Whether the window at `i` is a triangle (rather than its negative).
    pub fn window_is_positive(&self, i: usize) -> bool {
        (i as isize - self.base as isize).rem_euclid(2) == 0
    }
}

/// Consecutive composites vanish and every window is a triangle or the
/// negative of one, as its parity predicts.
pub fn check_puppe<I: Triangulated>(inst: &I, seq: &PuppeSequence<I::Mor>) -> Checks {
    let mut c = Checks::new();
    for i in 0..seq.maps.len().saturating_sub(1) {
        let ok = inst
            .compose(&seq.maps[i + 1], &seq.maps[i])
            .map(|m| inst.mor_equal(&m, &inst.zero(&inst.source(&m), &inst.target(&m))))
            .unwrap_or(false);
        c.expect(anchors::PUPPE, ok, || format!("maps {i} and {} do not compose to zero", i + 1));
    }
    for i in 0..seq.maps.len().saturating_sub(2) {
        let w = seq.window(i);
        let ok = if seq.window_is_positive(i) {
            inst.is_triangle(&w)
        } else {
            inst.is_triangle(&negate_triangle(inst, &w))
        };
        c.expect(anchors::PUPPE, ok, || format!("window at {i} has the wrong sign"));
    }
    c
}

/// The octahedron of `(f, g)` with the Puppe sequences of its four
/// triangles, which interlace into the braid diagram.
#[derive(Clone, Debug)]
pub struct Braid<M> {
    pub octahedron: Octahedron<M>,
    pub strands: [PuppeSequence<M>; 4],
}

pub fn braid<I: Triangulated>(inst: &I, f: &I::Mor, g: &I::Mor) -> Result<Braid<I::Mor>, CatError> {
    let octahedron = inst.octahedron(f, g)?;
    let strands = [
        puppe(inst, &octahedron.first, 0, 3),
        puppe(inst, &octahedron.second, 0, 3),
        puppe(inst, &octahedron.composite, 0, 3),
        puppe(inst, &octahedron.triangle(), 0, 3),
    ];
    Ok(Braid { octahedron, strands })
}

/// The octahedron conditions, each strand as a Puppe sequence, and the
/// suspended copies of the four octahedron squares that continue the braid.
pub fn check_braid<I: Triangulated>(inst: &I, b: &Braid<I::Mor>) -> Checks {
    let mut c = validate_octahedron(inst, &b.octahedron);
    for s in &b.strands {
        c.extend(check_puppe(inst, s));
    }
    let o = &b.octahedron;
    let s = |m: &I::Mor| inst.suspend_mor(m);
    let (a, bb, h) = (&o.first, &o.second, &o.composite);
    let squares = [
        ("Σk∘Σf' = Σh'∘Σg", square_commutes(inst, &s(&o.k), &s(&a.g), &s(&h.g), &s(&bb.f))),
        (
            "Σg''∘Σk' = Σ²f∘Σh''",
            square_commutes(inst, &s(&bb.h), &s(&o.k1), &s(&s(&a.f)), &s(&h.h)),
        ),
        ("Σh''∘Σk = Σf''", {
            let l = inst.compose(&s(&h.h), &s(&o.k));
            l.map(|l| inst.mor_equal(&l, &s(&a.h))).unwrap_or(false)
        }),
        ("Σk'∘Σh' = Σg'", {
            let l = inst.compose(&s(&o.k1), &s(&h.g));
            l.map(|l| inst.mor_equal(&l, &s(&bb.g))).unwrap_or(false)
        }),
    ];
    for (label, ok) in squares {
        c.expect(anchors::BRAID, ok, || format!("{label} fails"));
    }
    c
}
