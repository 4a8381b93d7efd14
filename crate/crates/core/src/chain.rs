//! Bounded chain complexes over an exact field and their homotopy category.
//!
//! Degrees are homological, `d_n: X_n → X_{n−1}`. Suspension is
//! `(ΣX)_n = X_{n−1}` with `d_{ΣX} = −d_X`, and the cone of `f: X → Y` is
//! `X_{n−1} ⊕ Y_n` with differential `[[−d_X, 0], [−f, d_Y]]`.
//!
//! Complexes are kept in a normal form with zero end terms trimmed, so
//! structural equality is a usable object identity and `Σ⁻¹Σ = id` holds
//! on the nose.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::category::{Biproduct, CatError, HomSpace, Octahedron, Triangle, Triangulated};
use crate::linalg::{matrix_from_json, matrix_to_json, ExactMatrix, Field, FieldElement, LinearSystem, Subquotient};
use crate::toolkit::Sampler;

#[derive(Clone, Debug, PartialEq)]
struct ComplexData {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[i] = d_{lo+i+1}`.
    diffs: Vec<ExactMatrix>,
}

/// A bounded complex in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex(Arc<ComplexData>);

impl Complex {
    /// `dims[i]` is the dimension in degree `lo + i`; `diffs[i]` is
    /// `d_{lo+i+1}`. Checks shapes and `d² = 0`.
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Complex, CatError> {
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(CatError::ShapeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.field() != field || d.shape() != (dims[i], dims[i + 1]) {
                return Err(CatError::ShapeMismatch(format!("d_{} has shape {:?}", lo + i as i64 + 1, d.shape())));
            }
        }
        for i in 1..diffs.len() {
            if !(&diffs[i - 1] * &diffs[i]).is_zero() {
                return Err(CatError::PreconditionViolated(format!("d² ≠ 0 at degree {}", lo + i as i64 + 1)));
            }
        }
        Ok(Self::normalized(field, lo, dims, diffs))
    }

    fn normalized(field: Field, mut lo: i64, mut dims: Vec<usize>, mut diffs: Vec<ExactMatrix>) -> Complex {
        while dims.first() == Some(&0) {
            dims.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while dims.last() == Some(&0) {
            dims.pop();
            diffs.pop();
        }
        if dims.is_empty() {
            lo = 0;
        }
        Complex(Arc::new(ComplexData { field, lo, dims, diffs }))
    }

    /// Builds from a dimension function and differential function over a
    /// degree range; no checks.
    fn from_fns(
        field: Field,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> ExactMatrix,
    ) -> Complex {
        if hi < lo {
            return Self::zero(field);
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs: Vec<ExactMatrix> = (lo + 1..=hi).map(d).collect();
        Self::normalized(field, lo, dims, diffs)
    }

    pub fn zero(field: Field) -> Complex {
        Complex(Arc::new(ComplexData { field, lo: 0, dims: Vec::new(), diffs: Vec::new() }))
    }

    /// `K^dim` in a single degree.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Complex {
        Self::normalized(field, degree, vec![dim], Vec::new())
    }

    /// The two-term complex `K^n --id--> K^n` in degrees `top`, `top − 1`.
    pub fn contractible(field: Field, top: i64, n: usize) -> Complex {
        Self::normalized(field, top - 1, vec![n, n], vec![ExactMatrix::identity(field, n)])
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn is_zero(&self) -> bool {
        self.0.dims.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.0.lo
    }

    /// Highest nonzero degree (`lo − 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.0.lo + self.0.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo() || n > self.hi() {
            0
        } else {
            self.0.dims[(n - self.lo()) as usize]
        }
    }

    /// `d_n: X_n → X_{n−1}`.
    pub fn d(&self, n: i64) -> ExactMatrix {
        if n <= self.lo() || n > self.hi() {
            ExactMatrix::zeros(self.field(), self.dim(n - 1), self.dim(n))
        } else {
            self.0.diffs[(n - self.lo() - 1) as usize].clone()
        }
    }

    /// `(ΣX)_n = X_{n−1}`, `d_{ΣX} = −d_X`.
    pub fn shift(&self) -> Complex {
        self.shift_by(1)
    }

    pub fn unshift(&self) -> Complex {
        self.shift_by(-1)
    }

    /// `Σ^k`; differentials pick up the sign `(−1)^k`.
    pub fn shift_by(&self, k: i64) -> Complex {
        let flip = k.rem_euclid(2) == 1;
        let diffs = self.0.diffs.iter().map(|d| if flip { d.neg() } else { d.clone() }).collect();
        let lo = if self.is_zero() { 0 } else { self.lo() + k };
        Complex(Arc::new(ComplexData { field: self.field(), lo, dims: self.0.dims.clone(), diffs }))
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let (lo, hi) = union_range(self, other);
        let field = self.field();
        Self::from_fns(
            field,
            lo,
            hi,
            |n| self.dim(n) + other.dim(n),
            |n| ExactMatrix::block_diag(field, &[&self.d(n), &other.d(n)]),
        )
    }

    /// `H_n = ker d_n / im d_{n+1}` with representatives and a coordinate
    /// projection killing boundaries.
    pub fn homology(&self, n: i64) -> Homology {
        let cycles = self.d(n).kernel_basis();
        let sq = Subquotient::new(&cycles, &self.d(n + 1));
        Homology { degree: n, dim: sq.dim(), quotient: sq }
    }

    /// Nonzero homology dimensions by degree.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        (self.lo()..=self.hi())
            .map(|n| (n, self.homology(n).dim))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field().to_string(),
            "lo": self.lo(),
            "hi": self.hi(),
            "dims": self.0.dims,
            "differentials": self.0.diffs.iter().map(matrix_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Complex, CatError> {
        let bad = |s: &str| CatError::PreconditionViolated(format!("complex JSON: {s}"));
        let field: Field = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing field"))?
            .parse()
            .map_err(|e: crate::linalg::LinalgError| bad(&e.to_string()))?;
        let lo = v.get("lo").and_then(Value::as_i64).ok_or_else(|| bad("missing lo"))?;
        let dims: Vec<usize> = v
            .get("dims")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing dims"))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("dims must be naturals")))
            .collect::<Result<_, _>>()?;
        if let Some(hi) = v.get("hi").and_then(Value::as_i64) {
            if hi != lo + dims.len() as i64 - 1 {
                return Err(bad("hi does not match lo and dims"));
            }
        }
        let diffs: Vec<ExactMatrix> = match v.get("differentials").and_then(Value::as_array) {
            Some(a) => a.iter().map(matrix_from_json).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        Complex::new(field, lo, dims, diffs)
    }
}

fn union_range(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

fn overlap(a: &Complex, b: &Complex) -> (i64, i64) {
    if a.is_zero() || b.is_zero() {
        return (0, -1);
    }
    let (lo, hi) = (a.lo().max(b.lo()), a.hi().min(b.hi()));
    if lo > hi {
        (0, -1)
    } else {
        (lo, hi)
    }
}

/// Homology in one degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub dim: usize,
    pub quotient: Subquotient,
}

impl Homology {
    /// Cycle representatives of a basis, as columns.
    pub fn representatives(&self) -> &ExactMatrix {
        &self.quotient.representatives
    }
}

/// A chain map, stored on the degrees where both ends are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    comps: Vec<ExactMatrix>,
}

impl ChainMap {
    /// Components given by `f(n)` on the overlap of supports; no checks.
    fn from_fn(source: &Complex, target: &Complex, f: impl Fn(i64) -> ExactMatrix) -> ChainMap {
        let (lo, hi) = overlap(source, target);
        ChainMap { source: source.clone(), target: target.clone(), lo, comps: (lo..=hi).map(f).collect() }
    }

    /// Validates shapes and commutation with the differentials.
    pub fn new(
        source: &Complex,
        target: &Complex,
        components: &BTreeMap<i64, ExactMatrix>,
    ) -> Result<ChainMap, CatError> {
        let field = source.field();
        for (n, m) in components {
            if m.shape() != (target.dim(*n), source.dim(*n)) || m.field() != field {
                return Err(CatError::ShapeMismatch(format!("component in degree {n} has shape {:?}", m.shape())));
            }
        }
        let f = Self::from_fn(source, target, |n| {
            components
                .get(&n)
                .cloned()
                .unwrap_or_else(|| ExactMatrix::zeros(field, target.dim(n), source.dim(n)))
        });
        if !f.is_chain_map() {
            return Err(CatError::PreconditionViolated("map does not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `f_n: X_n → Y_n` (zero outside the stored range).
    pub fn comp(&self, n: i64) -> ExactMatrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            ExactMatrix::zeros(self.field(), self.target.dim(n), self.source.dim(n))
        }
    }

    pub fn is_chain_map(&self) -> bool {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo..=hi + 1).all(|n| &self.target.d(n) * &self.comp(n) == &self.comp(n - 1) * &self.source.d(n))
    }

    fn zip(&self, other: &ChainMap, op: impl Fn(&ExactMatrix, &ExactMatrix) -> ExactMatrix) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| op(&self.comp(n), &other.comp(n)))
    }

    fn map(&self, op: impl Fn(&ExactMatrix) -> ExactMatrix) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| op(&self.comp(n)))
    }

    /// Component-wise action on homology: `H_n(f)` in the homology bases.
    pub fn on_homology(&self, n: i64) -> ExactMatrix {
        let hx = self.source.homology(n);
        let hy = self.target.homology(n);
        hy.quotient.coordinates(&(&self.comp(n) * hx.representatives()))
    }

    /// Induced maps on homology are invertible in every degree.
    pub fn is_quasi_iso(&self) -> bool {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo..=hi).all(|n| {
            let m = self.on_homology(n);
            m.is_square() && (m.rows() == 0 || m.is_invertible())
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "lo": self.lo,
            "components": self.comps.iter().map(matrix_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<ChainMap, CatError> {
        let bad = |s: &str| CatError::PreconditionViolated(format!("chain map JSON: {s}"));
        let source = Complex::from_json(v.get("source").ok_or_else(|| bad("missing source"))?)?;
        let target = Complex::from_json(v.get("target").ok_or_else(|| bad("missing target"))?)?;
        let lo = v.get("lo").and_then(Value::as_i64).unwrap_or(0);
        let comps: Vec<ExactMatrix> = match v.get("components").and_then(Value::as_array) {
            Some(a) => a.iter().map(matrix_from_json).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        let map: BTreeMap<i64, ExactMatrix> = comps.into_iter().enumerate().map(|(i, m)| (lo + i as i64, m)).collect();
        ChainMap::new(&source, &target, &map)
    }
}

/// `s_n: X_n → Y_{n+1}` with `f − g = d∘s + s∘d`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub lo: i64,
    pub comps: Vec<ExactMatrix>,
}

impl Homotopy {
    pub fn comp(&self, field: Field, x: &Complex, y: &Complex, n: i64) -> ExactMatrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            ExactMatrix::zeros(field, y.dim(n + 1), x.dim(n))
        }
    }

    /// Whether `f − g = d∘s + s∘d` holds degreewise.
    pub fn witnesses(&self, f: &ChainMap, g: &ChainMap) -> bool {
        let (x, y) = (&f.source, &f.target);
        let field = f.field();
        let (lo, hi) = union_range(x, y);
        (lo..=hi).all(|n| {
            let lhs = &f.comp(n) - &g.comp(n);
            let rhs = &(&y.d(n + 1) * &self.comp(field, x, y, n)) + &(&self.comp(field, x, y, n - 1) * &x.d(n));
            lhs == rhs
        })
    }
}

/// Unknowns `s_n: X_n → Y_{n+1}` with one equation `d∘s + s∘d = rhs_n` per
/// degree of the overlap of `x` and `y`, in flatten order.
fn homotopy_system(x: &Complex, y: &Complex, rhs: impl Fn(i64) -> ExactMatrix) -> (LinearSystem, i64) {
    let field = x.field();
    let (lo, hi) = overlap(x, y);
    let (slo, shi) = if x.is_zero() || y.is_zero() {
        (0, -1)
    } else {
        (x.lo().max(y.lo() - 1), x.hi().min(y.hi() - 1))
    };
    let mut sys = LinearSystem::new(field);
    let s: BTreeMap<i64, _> = (slo..=shi).map(|n| (n, sys.unknown(y.dim(n + 1), x.dim(n)))).collect();
    for n in lo..=hi {
        let (dy, dx) = (y.d(n + 1), x.d(n));
        let (iy, ix) = (ExactMatrix::identity(field, y.dim(n)), ExactMatrix::identity(field, x.dim(n)));
        let mut terms = Vec::new();
        if let Some(u) = s.get(&n) {
            terms.push((&dy, *u, &ix));
        }
        if let Some(u) = s.get(&(n - 1)) {
            terms.push((&iy, *u, &dx));
        }
        sys.equation(&terms, &rhs(n)).expect("homotopy equation shapes");
    }
    (sys, slo)
}

/// Unknowns `f_n` on the overlap, constrained by `d∘f = f∘d`.
fn chain_map_system(x: &Complex, y: &Complex) -> LinearSystem {
    let field = x.field();
    let (lo, hi) = overlap(x, y);
    let mut sys = LinearSystem::new(field);
    let f: BTreeMap<i64, _> = (lo..=hi).map(|n| (n, sys.unknown(y.dim(n), x.dim(n)))).collect();
    for n in lo..=hi + 1 {
        let (dy, dx) = (y.d(n), x.d(n));
        let ix = ExactMatrix::identity(field, x.dim(n));
        let neg_iy = ExactMatrix::identity(field, y.dim(n - 1)).neg();
        let mut terms = Vec::new();
        if let Some(u) = f.get(&n) {
            terms.push((&dy, *u, &ix));
        }
        if let Some(u) = f.get(&(n - 1)) {
            terms.push((&neg_iy, *u, &dx));
        }
        if !terms.is_empty() {
            sys.equation(&terms, &ExactMatrix::zeros(field, y.dim(n - 1), x.dim(n)))
                .expect("chain map equation shapes");
        }
    }
    sys
}

/// A witness that `f` and `g` are homotopic, if they are.
pub fn homotopic(f: &ChainMap, g: &ChainMap) -> Option<Homotopy> {
    if f.source != g.source || f.target != g.target {
        return None;
    }
    let (sys, slo) = homotopy_system(&f.source, &f.target, |n| &f.comp(n) - &g.comp(n));
    let comps = sys.solve().ok()?;
    Some(Homotopy { lo: slo, comps })
}

/// All chain maps `x → y` as flattened columns.
fn chain_maps_basis(x: &Complex, y: &Complex) -> ExactMatrix {
    chain_map_system(x, y).solution_space().expect("homogeneous system").kernel
}

fn unflatten_map(x: &Complex, y: &Complex, v: &ExactMatrix) -> ChainMap {
    let (lo, hi) = overlap(x, y);
    let mut offsets = BTreeMap::new();
    let mut off = 0;
    for n in lo..=hi {
        offsets.insert(n, off);
        off += y.dim(n) * x.dim(n);
    }
    ChainMap::from_fn(x, y, |n| {
        let (r, c) = (y.dim(n), x.dim(n));
        let o = offsets[&n];
        v.submatrix(o, o + r * c, 0, 1).unflatten(r, c)
    })
}

/// Graded dimensions of maps in the derived category: degree `k` counts
/// maps `H_n(x) → H_{n+k}(y)`.
pub fn derived_hom(x: &Complex, y: &Complex) -> BTreeMap<i64, usize> {
    let hx = x.homology_dims();
    let hy = y.homology_dims();
    let mut out = BTreeMap::new();
    for (n, a) in &hx {
        for (m, b) in &hy {
            *out.entry(m - n).or_insert(0) += a * b;
        }
    }
    out.retain(|_, d| *d > 0);
    out
}

/// Degreewise exactness of `0 → A --i--> B --p--> C → 0`, with the cone
/// triangle of `i` and the comparison map `cone(i) → C`.
#[derive(Clone, Debug)]
pub struct SesTriangle {
    pub triangle: Triangle<ChainMap>,
    pub comparison: ChainMap,
}

pub fn ses_to_triangle(inst: &ChainInstance, i: &ChainMap, p: &ChainMap) -> Result<SesTriangle, CatError> {
    if i.target != p.source {
        return Err(CatError::ShapeMismatch("i and p are not composable".into()));
    }
    let (a, b, c) = (&i.source, &i.target, &p.target);
    let (lo, hi) = union_range(&a.direct_sum(b), c);
    for n in lo..=hi {
        let (im, pm) = (i.comp(n), p.comp(n));
        let exact = (&pm * &im).is_zero()
            && im.rank() == a.dim(n)
            && pm.rank() == c.dim(n)
            && im.rank() + pm.rank() == b.dim(n);
        if !exact {
            return Err(CatError::NotExact(format!("degree {n}")));
        }
    }
    let triangle = inst.cone(i);
    let cone = triangle.g.target.clone();
    let field = inst.field;
    let comparison = ChainMap::from_fn(&cone, c, |n| {
        ExactMatrix::hstack(field, c.dim(n), &[&ExactMatrix::zeros(field, c.dim(n), a.dim(n - 1)), &p.comp(n)])
            .expect("comparison blocks")
    });
    if !comparison.is_quasi_iso() {
        return Err(CatError::Construction("comparison map is not a quasi-isomorphism".into()));
    }
    Ok(SesTriangle { triangle, comparison })
}

#[derive(Clone, Copy, Debug)]
pub struct ChainInstance {
    field: Field,
}

impl ChainInstance {
    pub fn new(field: Field) -> Self {
        ChainInstance { field }
    }

    /// Every chain map `x → y` as a list (not up to homotopy).
    pub fn chain_maps(&self, x: &Complex, y: &Complex) -> Vec<ChainMap> {
        let z = chain_maps_basis(x, y);
        (0..z.cols()).map(|k| unflatten_map(x, y, &z.submatrix(0, z.rows(), k, k + 1))).collect()
    }

    /// `ι: H(x) → x` from zero-differential homology into `x`, and a
    /// retraction `π: x → H(x)` with `π∘ι = 1`.
    pub fn homology_maps(&self, x: &Complex) -> (Complex, ChainMap, ChainMap) {
        let field = self.field;
        let hs: BTreeMap<i64, Homology> = (x.lo()..=x.hi()).map(|n| (n, x.homology(n))).collect();
        let h = Complex::from_fns(
            field,
            x.lo(),
            x.hi(),
            |n| hs[&n].dim,
            |n| ExactMatrix::zeros(field, hs[&(n - 1)].dim, hs[&n].dim),
        );
        let iota = ChainMap::from_fn(&h, x, |n| hs[&n].representatives().clone());
        let pi = ChainMap::from_fn(x, &h, |n| hs[&n].quotient.projection.clone());
        (h, iota, pi)
    }
}

impl Triangulated for ChainInstance {
    type Obj = Complex;
    type Mor = ChainMap;

    fn name(&self) -> String {
        format!("chain complexes over {} up to homotopy", self.field)
    }

    fn field(&self) -> Field {
        self.field
    }

    fn display_obj(&self, x: &Complex) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let dims: Vec<String> = x.dims().iter().map(|d| d.to_string()).collect();
        format!("[{}]@{}", dims.join(","), x.lo())
    }

    fn source(&self, f: &ChainMap) -> Complex {
        f.source.clone()
    }

    fn target(&self, f: &ChainMap) -> Complex {
        f.target.clone()
    }

    fn identity(&self, x: &Complex) -> ChainMap {
        ChainMap::from_fn(x, x, |n| ExactMatrix::identity(self.field, x.dim(n)))
    }

    fn zero(&self, x: &Complex, y: &Complex) -> ChainMap {
        ChainMap::from_fn(x, y, |n| ExactMatrix::zeros(self.field, y.dim(n), x.dim(n)))
    }

    fn compose(&self, g: &ChainMap, f: &ChainMap) -> Result<ChainMap, CatError> {
        if f.target != g.source {
            return Err(CatError::ShapeMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.display_obj(&g.source),
                self.display_obj(&g.target),
                self.display_obj(&f.source),
                self.display_obj(&f.target)
            )));
        }
        Ok(ChainMap::from_fn(&f.source, &g.target, |n| &g.comp(n) * &f.comp(n)))
    }

    fn add(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap, CatError> {
        if f.source != g.source || f.target != g.target {
            return Err(CatError::ShapeMismatch("adding chain maps with different endpoints".into()));
        }
        Ok(f.zip(g, |a, b| a + b))
    }

    fn negate(&self, f: &ChainMap) -> ChainMap {
        f.map(|a| a.neg())
    }

    fn scale(&self, c: &FieldElement, f: &ChainMap) -> ChainMap {
        f.map(|a| a.scale(c).expect("scalar in the instance field"))
    }

    fn suspend_obj(&self, x: &Complex) -> Complex {
        x.shift()
    }

    fn suspend_mor(&self, f: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&f.source.shift(), &f.target.shift(), |n| f.comp(n - 1))
    }

    fn desuspend_obj(&self, x: &Complex) -> Complex {
        x.unshift()
    }

    fn desuspend_mor(&self, f: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&f.source.unshift(), &f.target.unshift(), |n| f.comp(n + 1))
    }

    fn zero_object(&self) -> Complex {
        Complex::zero(self.field)
    }

    fn biproduct(&self, x: &Complex, y: &Complex) -> Biproduct<Complex, ChainMap> {
        let field = self.field;
        let s = x.direct_sum(y);
        let i1 = ChainMap::from_fn(x, &s, |n| {
            ExactMatrix::vstack(field, x.dim(n), &[&ExactMatrix::identity(field, x.dim(n)), &ExactMatrix::zeros(field, y.dim(n), x.dim(n))])
                .expect("biproduct blocks")
        });
        let i2 = ChainMap::from_fn(y, &s, |n| {
            ExactMatrix::vstack(field, y.dim(n), &[&ExactMatrix::zeros(field, x.dim(n), y.dim(n)), &ExactMatrix::identity(field, y.dim(n))])
                .expect("biproduct blocks")
        });
        let p1 = ChainMap::from_fn(&s, x, |n| i1.comp(n).transpose());
        let p2 = ChainMap::from_fn(&s, y, |n| i2.comp(n).transpose());
        Biproduct { object: s, i1, i2, p1, p2 }
    }

    fn cone(&self, f: &ChainMap) -> Triangle<ChainMap> {
        let field = self.field;
        let (x, y) = (&f.source, &f.target);
        let (lo, hi) = union_range(&x.shift(), y);
        let c = Complex::from_fns(
            field,
            lo,
            hi,
            |n| x.dim(n - 1) + y.dim(n),
            |n| {
                let neg_dx = x.d(n - 1).neg();
                let zero = ExactMatrix::zeros(field, x.dim(n - 2), y.dim(n));
                let neg_f = f.comp(n - 1).neg();
                let dy = y.d(n);
                ExactMatrix::block(field, &[vec![&neg_dx, &zero], vec![&neg_f, &dy]]).expect("cone blocks")
            },
        );
        let g = ChainMap::from_fn(y, &c, |n| {
            ExactMatrix::vstack(field, y.dim(n), &[&ExactMatrix::zeros(field, x.dim(n - 1), y.dim(n)), &ExactMatrix::identity(field, y.dim(n))])
                .expect("cone inclusion")
        });
        let sx = x.shift();
        let h = ChainMap::from_fn(&c, &sx, |n| {
            ExactMatrix::hstack(field, x.dim(n - 1), &[&ExactMatrix::identity(field, x.dim(n - 1)), &ExactMatrix::zeros(field, x.dim(n - 1), y.dim(n))])
                .expect("cone projection")
        });
        Triangle::new(f.clone(), g, h)
    }

    /// With `h = g∘f`: `k(x, y) = (x, g y)`, `k'(x, z) = (f x, z)` and
    /// `k'' = Σf'∘g''`.
    fn octahedron(&self, f: &ChainMap, g: &ChainMap) -> Result<Octahedron<ChainMap>, CatError> {
        let field = self.field;
        let h = self.compose(g, f)?;
        let first = self.cone(f);
        let second = self.cone(g);
        let composite = self.cone(&h);
        let (cf, ch, cg) = (&first.g.target, &composite.g.target, &second.g.target);
        let (x, z) = (&f.source, &g.target);
        let k = ChainMap::from_fn(cf, ch, |n| {
            ExactMatrix::block_diag(field, &[&ExactMatrix::identity(field, x.dim(n - 1)), &g.comp(n)])
        });
        let k1 = ChainMap::from_fn(ch, cg, |n| {
            ExactMatrix::block_diag(field, &[&f.comp(n - 1), &ExactMatrix::identity(field, z.dim(n))])
        });
        let k2 = self.compose(&self.suspend_mor(&first.g), &second.h)?;
        Ok(Octahedron { first, second, composite, k, k1, k2 })
    }

    fn mor_equal(&self, f: &ChainMap, g: &ChainMap) -> bool {
        homotopic(f, g).is_some()
    }

    fn hom_space(&self, x: &Complex, y: &Complex) -> HomSpace<ChainMap> {
        let z = chain_maps_basis(x, y);
        let (sys, _) = homotopy_system(x, y, |n| ExactMatrix::zeros(self.field, y.dim(n), x.dim(n)));
        let b = sys.assemble().0;
        let sq = Subquotient::new(&z, &b);
        let reps = &sq.representatives;
        let basis = (0..reps.cols()).map(|k| unflatten_map(x, y, &reps.submatrix(0, reps.rows(), k, k + 1))).collect();
        HomSpace { basis, projection: sq.projection }
    }

    fn flatten(&self, f: &ChainMap) -> ExactMatrix {
        let cols: Vec<ExactMatrix> = f.comps.iter().map(|m| m.flatten()).collect();
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        ExactMatrix::vstack(self.field, 1, &refs).expect("flatten blocks")
    }

    /// Complexes over a field are isomorphic in the homotopy category
    /// exactly when their homology agrees; the isomorphism factors
    /// through homology.
    fn obj_iso(&self, x: &Complex, y: &Complex) -> Option<(ChainMap, ChainMap)> {
        if x.homology_dims() != y.homology_dims() {
            return None;
        }
        if x == y {
            return Some((self.identity(x), self.identity(x)));
        }
        let (hx, ix, px) = self.homology_maps(x);
        let (hy, iy, py) = self.homology_maps(y);
        // hx and hy are equal graded spaces once trimmed; compare degreewise.
        let field = self.field;
        let bridge = |a: &Complex, b: &Complex| ChainMap::from_fn(a, b, |n| ExactMatrix::identity(field, a.dim(n)));
        let u = self.compose(&iy, &self.compose(&bridge(&hx, &hy), &px).ok()?).ok()?;
        let v = self.compose(&ix, &self.compose(&bridge(&hy, &hx), &py).ok()?).ok()?;
        Some((u, v))
    }

    fn is_zero_object(&self, x: &Complex) -> bool {
        x.is_acyclic()
    }
}

/// Random complexes of bounded length and dimension, random chain maps and
/// degreewise-invertible chain automorphisms.
#[derive(Clone, Copy, Debug)]
pub struct ChainSampler {
    pub max_dim: usize,
    pub max_len: usize,
}

impl Sampler<ChainInstance> for ChainSampler {
    fn object(&self, inst: &ChainInstance, rng: &mut ChaCha8Rng) -> Complex {
        let field = inst.field;
        let len = rng.gen_range(1..=self.max_len.max(1));
        let lo = rng.gen_range(-1..=1);
        let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=self.max_dim)).collect();
        let mut diffs: Vec<ExactMatrix> = Vec::new();
        for i in 1..len {
            // d_i must land in ker d_{i−1}.
            let ker = match diffs.last() {
                Some(prev) => prev.kernel_basis(),
                None => ExactMatrix::identity(field, dims[0]),
            };
            let r = ExactMatrix::random(field, ker.cols(), dims[i], rng);
            diffs.push(&ker * &r);
        }
        Complex::new(field, lo, dims, diffs).expect("sampled complex")
    }

    fn morphism(&self, inst: &ChainInstance, x: &Complex, y: &Complex, rng: &mut ChaCha8Rng) -> ChainMap {
        let z = chain_maps_basis(x, y);
        let coeffs = ExactMatrix::random(inst.field, z.cols(), 1, rng);
        unflatten_map(x, y, &(&z * &coeffs))
    }

    fn automorphism(&self, inst: &ChainInstance, x: &Complex, rng: &mut ChaCha8Rng) -> (ChainMap, ChainMap) {
        for _ in 0..20 {
            let f = self.morphism(inst, x, x, rng);
            let invs: Option<Vec<ExactMatrix>> = f.comps.iter().map(|m| m.inverse()).collect();
            if let Some(invs) = invs {
                let lo = f.lo;
                let inv = ChainMap::from_fn(x, x, |n| invs[(n - lo) as usize].clone());
                return (f, inv);
            }
        }
        let c = inst.field.random_nonzero(rng);
        let ci = c.inverse().expect("nonzero");
        let id = inst.identity(x);
        (inst.scale(&c, &id), inst.scale(&ci, &id))
    }
}
