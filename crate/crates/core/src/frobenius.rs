//! Modules over the dual numbers `K[x]/(x²)` and their stable category.
//!
//! Every module is `a` free summands `K[x]` plus `b` trivial summands `K`.
//! The normal form `N(a, b)` uses the basis `g₁, xg₁, …, g_a, xg_a, t₁, …, t_b`.
//! Free modules are both injective and projective, and two maps are equal
//! in the stable category when their difference factors through one.
//!
//! Objects of the stable instance are normal forms. The module-level
//! suspension `ΣA = I(A)/A` is trivial of dimension `b`, and
//! `θ_A: I(A)/A → A`, `[G_{a+j}] ↦ t_j`, is a natural stable isomorphism;
//! the instance uses it to present `Σ` as the identity on normal forms and
//! on representatives.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::category::{Biproduct, CatError, HomSpace, Octahedron, Triangle, Triangulated};
use crate::linalg::{matrix_from_json, matrix_to_json, ExactMatrix, Field, FieldElement, LinearSystem, Subquotient};
use crate::toolkit::Sampler;

/// A module over the dual numbers: a space with `x² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqZeroModule {
    x: ExactMatrix,
}

/// `dim = 2a + b`; `basis` has columns `g₁, xg₁, …, t₁, …` in the
/// module's coordinates.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub free_rank: usize,
    pub trivial_rank: usize,
    pub basis: ExactMatrix,
}

impl SqZeroModule {
    pub fn new(x: ExactMatrix) -> Result<SqZeroModule, CatError> {
        if !x.is_square() {
            return Err(CatError::ShapeMismatch("x must be square".into()));
        }
        if !(&x * &x).is_zero() {
            return Err(CatError::PreconditionViolated("x² ≠ 0".into()));
        }
        Ok(SqZeroModule { x })
    }

    /// `N(a, b)`.
    pub fn normal(field: Field, a: usize, b: usize) -> SqZeroModule {
        let n = 2 * a + b;
        let x = ExactMatrix::from_fn(field, n, n, |i, j| {
            FieldElement::from_i64(field, (i < 2 * a && j % 2 == 0 && i == j + 1) as i64)
        });
        SqZeroModule { x }
    }

    pub fn free(field: Field, rank: usize) -> SqZeroModule {
        Self::normal(field, rank, 0)
    }

    pub fn trivial(field: Field, dim: usize) -> SqZeroModule {
        Self::normal(field, 0, dim)
    }

    pub fn field(&self) -> Field {
        self.x.field()
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &ExactMatrix {
        &self.x
    }

    pub fn decompose(&self) -> Decomposition {
        let field = self.field();
        let n = self.dim();
        let ker = self.x.kernel_basis();
        let gens = ker.complement_basis();
        let a = gens.cols();
        let images = &self.x * &gens;
        let trivial = Subquotient::new(&ker, &images).representatives;
        let mut cols: Vec<ExactMatrix> = Vec::with_capacity(n);
        for i in 0..a {
            cols.push(gens.submatrix(0, n, i, i + 1));
            cols.push(images.submatrix(0, n, i, i + 1));
        }
        for j in 0..trivial.cols() {
            cols.push(trivial.submatrix(0, n, j, j + 1));
        }
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        let basis = ExactMatrix::hstack(field, n, &refs).expect("decomposition columns");
        Decomposition { free_rank: a, trivial_rank: trivial.cols(), basis }
    }

    /// `H = ker x / im x`; its dimension is the trivial rank.
    pub fn homology_dim(&self) -> usize {
        self.dim() - 2 * self.x.rank()
    }

    /// Module maps `self → other`, as a basis of matrices.
    pub fn module_maps(&self, other: &SqZeroModule) -> Vec<ExactMatrix> {
        let field = self.field();
        let mut sys = LinearSystem::new(field);
        let u = sys.unknown(other.dim(), self.dim());
        let (ia, ib) = (ExactMatrix::identity(field, self.dim()), ExactMatrix::identity(field, other.dim()));
        sys.equation(&[(&ib, u, &self.x), (&other.x.neg(), u, &ia)], &ExactMatrix::zeros(field, other.dim(), self.dim()))
            .expect("module map equation");
        let space = sys.solution_space().expect("homogeneous system");
        (0..space.dim()).map(|k| space.kernel_parts(k).remove(0)).collect()
    }

    pub fn is_module_map(&self, other: &SqZeroModule, f: &ExactMatrix) -> bool {
        f.shape() == (other.dim(), self.dim()) && f * &self.x == &other.x * f
    }

    /// Injective hull `I(A)`, free of rank `a + b`, with its embedding.
    pub fn injective_hull(&self) -> (SqZeroModule, ExactMatrix) {
        let d = self.decompose();
        let hull = Self::free(self.field(), d.free_rank + d.trivial_rank);
        let emb = &normal_hull_embedding(self.field(), d.free_rank, d.trivial_rank) * &d.basis.inverse().expect("basis");
        (hull, emb)
    }

    /// `ΣA = I(A)/A`, with the quotient map from the hull.
    pub fn suspend(&self) -> (SqZeroModule, ExactMatrix) {
        let (hull, emb) = self.injective_hull();
        let (q, pi) = quotient(&hull, &emb);
        (q, pi)
    }

    /// `Σ⁻¹A`: the kernel of the projective cover `P(A) ↠ A`, with its
    /// inclusion into the cover.
    pub fn desuspend(&self) -> (SqZeroModule, ExactMatrix) {
        let d = self.decompose();
        let field = self.field();
        let (a, b) = (d.free_rank, d.trivial_rank);
        let cover = Self::free(field, a + b);
        // G_i ↦ g_i, xG_i ↦ xg_i, G_{a+j} ↦ t_j, xG_{a+j} ↦ 0.
        let cols: Vec<ExactMatrix> = (0..a + b)
            .flat_map(|i| {
                let n = self.dim();
                if i < a {
                    vec![d.basis.submatrix(0, n, 2 * i, 2 * i + 1), d.basis.submatrix(0, n, 2 * i + 1, 2 * i + 2)]
                } else {
                    let c = 2 * a + (i - a);
                    vec![d.basis.submatrix(0, n, c, c + 1), ExactMatrix::zeros(field, n, 1)]
                }
            })
            .collect();
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        let cover_map = ExactMatrix::hstack(field, self.dim(), &refs).expect("cover columns");
        let k = cover_map.kernel_basis();
        let xk = k.solve(&(cover.x() * &k)).expect("kernel is a submodule");
        (SqZeroModule { x: xk }, k)
    }

    /// `f − g` factors through an injective: it extends along `A ↪ I(A)`.
    pub fn stable_equal(&self, target: &SqZeroModule, f: &ExactMatrix, g: &ExactMatrix) -> bool {
        let (hull, emb) = self.injective_hull();
        extends_along(&hull, &emb, target, &(f - g))
    }

    pub fn to_json(&self) -> Value {
        json!({ "dim": self.dim(), "x": matrix_to_json(&self.x) })
    }

    pub fn from_json(v: &Value) -> Result<SqZeroModule, CatError> {
        let x = matrix_from_json(v.get("x").ok_or_else(|| CatError::PreconditionViolated("module JSON: missing x".into()))?)?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != x.rows() {
                return Err(CatError::ShapeMismatch("module JSON: dim does not match x".into()));
            }
        }
        SqZeroModule::new(x)
    }
}

/// `N(a, b) ↪ F(a + b)`: `g_i ↦ G_i`, `xg_i ↦ xG_i`, `t_j ↦ xG_{a+j}`.
fn normal_hull_embedding(field: Field, a: usize, b: usize) -> ExactMatrix {
    let n = 2 * a + b;
    ExactMatrix::from_fn(field, 2 * (a + b), n, |i, j| {
        let hit = if j < 2 * a { i == j } else { i == 2 * (a + (j - 2 * a)) + 1 };
        FieldElement::from_i64(field, hit as i64)
    })
}

/// `q_A: F(a + b) → N(a, b)`, `G_{a+j} ↦ t_j` and everything else to 0;
/// this is `θ_A` composed with the quotient `I(A) → I(A)/A`.
fn normal_hull_quotient(field: Field, a: usize, b: usize) -> ExactMatrix {
    ExactMatrix::from_fn(field, 2 * a + b, 2 * (a + b), |i, j| {
        FieldElement::from_i64(field, (i >= 2 * a && j == 2 * (a + i - 2 * a)) as i64)
    })
}

/// Module structure on `m / im(emb)` and the quotient map.
fn quotient(m: &SqZeroModule, emb: &ExactMatrix) -> (SqZeroModule, ExactMatrix) {
    let field = m.field();
    let pi = emb.cokernel_projection();
    let section = pi.solve(&ExactMatrix::identity(field, pi.rows())).expect("projection is surjective");
    let xq = &(&pi * m.x()) * &section;
    (SqZeroModule { x: xq }, pi)
}

/// Whether `delta: A → B` equals `e∘emb` for a module map `e` out of the
/// free module `hull`.
fn extends_along(hull: &SqZeroModule, emb: &ExactMatrix, target: &SqZeroModule, delta: &ExactMatrix) -> bool {
    solve_extension(hull, emb, target, delta).is_some()
}

/// A module map `e: F(r) → B` with `e∘emb = delta`. A map out of a free
/// module is fixed by the images `v_i` of the generators: `e = V·E₁ + x_B·V·E₂`.
fn solve_extension(hull: &SqZeroModule, emb: &ExactMatrix, target: &SqZeroModule, delta: &ExactMatrix) -> Option<ExactMatrix> {
    let field = hull.field();
    let r = hull.dim() / 2;
    let (e1, e2) = generator_selectors(field, r);
    let mut sys = LinearSystem::new(field);
    let v = sys.unknown(target.dim(), r);
    let (l1, l2) = (&e1 * emb, &e2 * emb);
    let id = ExactMatrix::identity(field, target.dim());
    sys.equation(&[(&id, v, &l1), (target.x(), v, &l2)], delta).ok()?;
    let vv = sys.solve().ok()?.remove(0);
    Some(&(&vv * &e1) + &(&(target.x() * &vv) * &e2))
}

/// `E₁`, `E₂`: `r × 2r` selectors sending generator `i` to columns `2i`
/// and `2i + 1`.
fn generator_selectors(field: Field, r: usize) -> (ExactMatrix, ExactMatrix) {
    let e1 = ExactMatrix::from_fn(field, r, 2 * r, |i, j| FieldElement::from_i64(field, (j == 2 * i) as i64));
    let e2 = ExactMatrix::from_fn(field, r, 2 * r, |i, j| FieldElement::from_i64(field, (j == 2 * i + 1) as i64));
    (e1, e2)
}

/// The normal form `N(a, b)`, an object of the stable instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub free_rank: usize,
    pub trivial_rank: usize,
}

impl NormalForm {
    pub fn dim(&self) -> usize {
        2 * self.free_rank + self.trivial_rank
    }
}

/// A module map between normal forms, up to maps factoring through a free module.
#[derive(Clone, Debug, PartialEq)]
pub struct StableMor {
    pub source: NormalForm,
    pub target: NormalForm,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Copy, Debug)]
pub struct FrobeniusInstance {
    field: Field,
}

/// Pushout data for the cone of `f`: `P = (I(A) ⊕ B) / (ι_A; −f)(A)`.
struct ConeData {
    /// `I(A) ⊕ B → P`.
    pi: ExactMatrix,
    /// A linear section of `pi`.
    section: ExactMatrix,
    /// Columns: normal-form basis of `P` in `P` coordinates.
    basis: ExactMatrix,
    basis_inv: ExactMatrix,
    object: NormalForm,
    hull_dim: usize,
}

impl FrobeniusInstance {
    pub fn new(field: Field) -> Self {
        FrobeniusInstance { field }
    }

    pub fn object(&self, free_rank: usize, trivial_rank: usize) -> NormalForm {
        NormalForm { free_rank, trivial_rank }
    }

    pub fn module(&self, x: &NormalForm) -> SqZeroModule {
        SqZeroModule::normal(self.field, x.free_rank, x.trivial_rank)
    }

    /// Wraps a module map between normal forms.
    pub fn mor(&self, source: NormalForm, target: NormalForm, matrix: ExactMatrix) -> Result<StableMor, CatError> {
        if !self.module(&source).is_module_map(&self.module(&target), &matrix) {
            return Err(CatError::PreconditionViolated("not a module map".into()));
        }
        Ok(StableMor { source, target, matrix })
    }

    /// The normal form of a module and the isomorphism from it.
    pub fn normalize(&self, m: &SqZeroModule) -> (NormalForm, ExactMatrix) {
        let d = m.decompose();
        (self.object(d.free_rank, d.trivial_rank), d.basis)
    }

    fn cone_data(&self, f: &StableMor) -> ConeData {
        let field = self.field;
        let (a, b) = (f.source, f.target);
        let emb = normal_hull_embedding(field, a.free_rank, a.trivial_rank);
        let hull_dim = emb.rows();
        let m = ExactMatrix::vstack(field, a.dim(), &[&emb, &f.matrix.neg()]).expect("cone relation");
        let pi = m.cokernel_projection();
        let section = pi.solve(&ExactMatrix::identity(field, pi.rows())).expect("projection is surjective");
        let ambient = ExactMatrix::block_diag(field, &[self.module(&self.hull(&a)).x(), self.module(&b).x()]);
        let xp = &(&pi * &ambient) * &section;
        let p = SqZeroModule { x: xp };
        let d = p.decompose();
        let basis_inv = d.basis.inverse().expect("decomposition basis");
        ConeData {
            pi,
            section,
            basis: d.basis,
            basis_inv,
            object: self.object(d.free_rank, d.trivial_rank),
            hull_dim,
        }
    }

    fn hull(&self, a: &NormalForm) -> NormalForm {
        self.object(a.free_rank + a.trivial_rank, 0)
    }

    /// `I(f): I(A) → I(B)` with `I(f)∘ι_A = ι_B∘f`.
    fn hull_map(&self, f: &StableMor) -> ExactMatrix {
        let field = self.field;
        let (a, b) = (f.source, f.target);
        let ea = normal_hull_embedding(field, a.free_rank, a.trivial_rank);
        let eb = normal_hull_embedding(field, b.free_rank, b.trivial_rank);
        let hull_a = self.module(&self.hull(&a));
        let hull_b = self.module(&self.hull(&b));
        solve_extension(&hull_a, &ea, &hull_b, &(&eb * &f.matrix)).expect("free modules are injective")
    }

    /// Triangle from a short exact sequence `0 → A --i--> B --p--> C → 0`
    /// of modules, with connecting map `C → ΣA` from the hull diagram,
    /// presented on normal forms.
    pub fn ses_to_triangle(
        &self,
        a: &SqZeroModule,
        b: &SqZeroModule,
        c: &SqZeroModule,
        i: &ExactMatrix,
        p: &ExactMatrix,
    ) -> Result<Triangle<StableMor>, CatError> {
        if !a.is_module_map(b, i) || !b.is_module_map(c, p) {
            return Err(CatError::PreconditionViolated("maps are not module maps".into()));
        }
        let exact = (p * i).is_zero() && i.rank() == a.dim() && p.rank() == c.dim() && a.dim() + c.dim() == b.dim();
        if !exact {
            return Err(CatError::NotExact("0 → A → B → C → 0".into()));
        }
        let (na, pa) = self.normalize(a);
        let (nb, pb) = self.normalize(b);
        let (nc, pc) = self.normalize(c);
        let inv = |m: &ExactMatrix| m.inverse().expect("basis");
        let i2 = &(&inv(&pb) * i) * &pa;
        let p2 = &(&inv(&pc) * p) * &pb;
        let field = self.field;
        let emb = normal_hull_embedding(field, na.free_rank, na.trivial_rank);
        let hull = self.module(&self.hull(&na));
        // Extend ι_A along i: e∘i = ι_A, by injectivity of the hull.
        let e = solve_module_map_extension(&self.module(&nb), &hull, &i2, &emb)
            .ok_or_else(|| CatError::Construction("hull extension failed".into()))?;
        let section = p2.solve(&ExactMatrix::identity(field, p2.rows())).expect("p is surjective");
        let q = normal_hull_quotient(field, na.free_rank, na.trivial_rank);
        let h = &(&q * &e) * &section;
        Ok(Triangle::new(
            StableMor { source: na, target: nb, matrix: i2 },
            StableMor { source: nb, target: nc, matrix: p2 },
            StableMor { source: nc, target: na, matrix: h },
        ))
    }
}

/// A module map `e: B → H` with `e∘i = target_map`.
fn solve_module_map_extension(
    b: &SqZeroModule,
    h: &SqZeroModule,
    i: &ExactMatrix,
    target_map: &ExactMatrix,
) -> Option<ExactMatrix> {
    let field = b.field();
    let mut sys = LinearSystem::new(field);
    let e = sys.unknown(h.dim(), b.dim());
    let ih = ExactMatrix::identity(field, h.dim());
    let ib = ExactMatrix::identity(field, b.dim());
    sys.equation(&[(&ih, e, i)], target_map).ok()?;
    sys.equation(&[(&ih, e, b.x()), (&h.x().neg(), e, &ib)], &ExactMatrix::zeros(field, h.dim(), b.dim()))
        .ok()?;
    Some(sys.solve().ok()?.remove(0))
}

impl Triangulated for FrobeniusInstance {
    type Obj = NormalForm;
    type Mor = StableMor;

    fn name(&self) -> String {
        format!("stable modules over {}[x]/(x²)", self.field)
    }

    fn field(&self) -> Field {
        self.field
    }

    fn display_obj(&self, x: &NormalForm) -> String {
        format!("N({},{})", x.free_rank, x.trivial_rank)
    }

    fn source(&self, f: &StableMor) -> NormalForm {
        f.source
    }

    fn target(&self, f: &StableMor) -> NormalForm {
        f.target
    }

    fn identity(&self, x: &NormalForm) -> StableMor {
        StableMor { source: *x, target: *x, matrix: ExactMatrix::identity(self.field, x.dim()) }
    }

    fn zero(&self, x: &NormalForm, y: &NormalForm) -> StableMor {
        StableMor { source: *x, target: *y, matrix: ExactMatrix::zeros(self.field, y.dim(), x.dim()) }
    }

    fn compose(&self, g: &StableMor, f: &StableMor) -> Result<StableMor, CatError> {
        if f.target != g.source {
            return Err(CatError::ShapeMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.display_obj(&g.source),
                self.display_obj(&g.target),
                self.display_obj(&f.source),
                self.display_obj(&f.target)
            )));
        }
        Ok(StableMor { source: f.source, target: g.target, matrix: &g.matrix * &f.matrix })
    }

    fn add(&self, f: &StableMor, g: &StableMor) -> Result<StableMor, CatError> {
        if f.source != g.source || f.target != g.target {
            return Err(CatError::ShapeMismatch("adding maps with different endpoints".into()));
        }
        Ok(StableMor { source: f.source, target: f.target, matrix: &f.matrix + &g.matrix })
    }

    fn negate(&self, f: &StableMor) -> StableMor {
        StableMor { source: f.source, target: f.target, matrix: f.matrix.neg() }
    }

    fn scale(&self, c: &FieldElement, f: &StableMor) -> StableMor {
        StableMor { source: f.source, target: f.target, matrix: f.matrix.scale(c).expect("scalar in the instance field") }
    }

    fn suspend_obj(&self, x: &NormalForm) -> NormalForm {
        *x
    }

    fn suspend_mor(&self, f: &StableMor) -> StableMor {
        f.clone()
    }

    fn desuspend_obj(&self, x: &NormalForm) -> NormalForm {
        *x
    }

    fn desuspend_mor(&self, f: &StableMor) -> StableMor {
        f.clone()
    }

    fn zero_object(&self) -> NormalForm {
        self.object(0, 0)
    }

    /// Block sum reordered so free summands come first.
    fn biproduct(&self, x: &NormalForm, y: &NormalForm) -> Biproduct<NormalForm, StableMor> {
        let field = self.field;
        let s = self.object(x.free_rank + y.free_rank, x.trivial_rank + y.trivial_rank);
        let (fx, fy) = (2 * x.free_rank, 2 * y.free_rank);
        // Position in the sum of basis vector j of x, resp. y.
        let pos_x = |j: usize| if j < fx { j } else { fx + fy + (j - fx) };
        let pos_y = |j: usize| if j < fy { fx + j } else { fx + fy + x.trivial_rank + (j - fy) };
        let one = |b: bool| FieldElement::from_i64(field, b as i64);
        let i1 = ExactMatrix::from_fn(field, s.dim(), x.dim(), |r, c| one(r == pos_x(c)));
        let i2 = ExactMatrix::from_fn(field, s.dim(), y.dim(), |r, c| one(r == pos_y(c)));
        Biproduct {
            object: s,
            p1: StableMor { source: s, target: *x, matrix: i1.transpose() },
            p2: StableMor { source: s, target: *y, matrix: i2.transpose() },
            i1: StableMor { source: *x, target: s, matrix: i1 },
            i2: StableMor { source: *y, target: s, matrix: i2 },
        }
    }

    /// `A --f--> B --v--> P --w--> A` with `P` the pushout of `I(A) ← A → B`
    /// in normal form, `v` induced by `B` and `w` by `θ_A∘(I(A) → I(A)/A)`.
    fn cone(&self, f: &StableMor) -> Triangle<StableMor> {
        let field = self.field;
        let (a, b) = (f.source, f.target);
        let cd = self.cone_data(f);
        let in_b = ExactMatrix::vstack(
            field,
            b.dim(),
            &[&ExactMatrix::zeros(field, cd.hull_dim, b.dim()), &ExactMatrix::identity(field, b.dim())],
        )
        .expect("inclusion blocks");
        let v = &(&cd.basis_inv * &cd.pi) * &in_b;
        let q = normal_hull_quotient(field, a.free_rank, a.trivial_rank);
        let h_raw = ExactMatrix::hstack(field, a.dim(), &[&q, &ExactMatrix::zeros(field, a.dim(), b.dim())]).expect("blocks");
        let w = &(&h_raw * &cd.section) * &cd.basis;
        Triangle::new(
            f.clone(),
            StableMor { source: b, target: cd.object, matrix: v },
            StableMor { source: cd.object, target: a, matrix: w },
        )
    }

    /// `k` is induced by `1 ⊕ g` on `I(A) ⊕ B → I(A) ⊕ C`, `k'` by
    /// `I(f) ⊕ 1` on `I(A) ⊕ C → I(B) ⊕ C`, and `k'' = Σf'∘g''`.
    fn octahedron(&self, f: &StableMor, g: &StableMor) -> Result<Octahedron<StableMor>, CatError> {
        let field = self.field;
        let h = self.compose(g, f)?;
        let (cf, cg, ch) = (self.cone_data(f), self.cone_data(g), self.cone_data(&h));
        let first = self.cone(f);
        let second = self.cone(g);
        let composite = self.cone(&h);
        let id_ia = ExactMatrix::identity(field, cf.hull_dim);
        let k_raw = ExactMatrix::block_diag(field, &[&id_ia, &g.matrix]);
        let k = path_m(&[&ch.basis_inv, &ch.pi, &k_raw, &cf.section, &cf.basis]);
        let id_c = ExactMatrix::identity(field, g.target.dim());
        let k1_raw = ExactMatrix::block_diag(field, &[&self.hull_map(f), &id_c]);
        let k1 = path_m(&[&cg.basis_inv, &cg.pi, &k1_raw, &ch.section, &ch.basis]);
        let k = StableMor { source: cf.object, target: ch.object, matrix: k };
        let k1 = StableMor { source: ch.object, target: cg.object, matrix: k1 };
        let k2 = self.compose(&first.g, &second.h)?;
        Ok(Octahedron { first, second, composite, k, k1, k2 })
    }

    fn mor_equal(&self, f: &StableMor, g: &StableMor) -> bool {
        if f.source != g.source || f.target != g.target {
            return false;
        }
        let emb = normal_hull_embedding(self.field, f.source.free_rank, f.source.trivial_rank);
        extends_along(&self.module(&self.hull(&f.source)), &emb, &self.module(&f.target), &(&f.matrix - &g.matrix))
    }

    /// Module maps modulo those factoring through the hull of the source.
    fn hom_space(&self, x: &NormalForm, y: &NormalForm) -> HomSpace<StableMor> {
        let field = self.field;
        let (mx, my) = (self.module(x), self.module(y));
        let maps = mx.module_maps(&my);
        let cols: Vec<ExactMatrix> = maps.iter().map(|m| m.flatten()).collect();
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        let z = ExactMatrix::hstack(field, x.dim() * y.dim(), &refs).expect("flattened maps");
        let r = x.free_rank + x.trivial_rank;
        let (e1, e2) = generator_selectors(field, r);
        let emb = normal_hull_embedding(field, x.free_rank, x.trivial_rank);
        let (l1, l2) = (&e1 * &emb, &e2 * &emb);
        // e(V)∘ι for elementary V.
        let mut bcols = Vec::with_capacity(y.dim() * r);
        for i in 0..y.dim() {
            for j in 0..r {
                let v = ExactMatrix::from_fn(field, y.dim(), r, |a, b| FieldElement::from_i64(field, (a == i && b == j) as i64));
                let m = &(&v * &l1) + &(&(my.x() * &v) * &l2);
                bcols.push(m.flatten());
            }
        }
        let brefs: Vec<&ExactMatrix> = bcols.iter().collect();
        let b = ExactMatrix::hstack(field, x.dim() * y.dim(), &brefs).expect("flattened maps");
        let sq = Subquotient::new(&z, &b);
        let reps = &sq.representatives;
        let basis = (0..reps.cols())
            .map(|k| StableMor { source: *x, target: *y, matrix: reps.submatrix(0, reps.rows(), k, k + 1).unflatten(y.dim(), x.dim()) })
            .collect();
        HomSpace { basis, projection: sq.projection }
    }

    fn flatten(&self, f: &StableMor) -> ExactMatrix {
        f.matrix.flatten()
    }

    /// Isomorphic exactly when the trivial ranks agree; the isomorphism
    /// matches trivial summands and kills free ones.
    fn obj_iso(&self, x: &NormalForm, y: &NormalForm) -> Option<(StableMor, StableMor)> {
        if x.trivial_rank != y.trivial_rank {
            return None;
        }
        let field = self.field;
        let m = |s: &NormalForm, t: &NormalForm| {
            let (fs, ft) = (2 * s.free_rank, 2 * t.free_rank);
            let matrix = ExactMatrix::from_fn(field, t.dim(), s.dim(), |i, j| {
                FieldElement::from_i64(field, (i >= ft && j >= fs && i - ft == j - fs) as i64)
            });
            StableMor { source: *s, target: *t, matrix }
        };
        Some((m(x, y), m(y, x)))
    }

    fn is_zero_object(&self, x: &NormalForm) -> bool {
        x.trivial_rank == 0
    }
}

fn path_m(ms: &[&ExactMatrix]) -> ExactMatrix {
    let mut acc = ms[ms.len() - 1].clone();
    for m in ms[..ms.len() - 1].iter().rev() {
        acc = *m * &acc;
    }
    acc
}

/// Random normal forms of dimension at most `max_dim`, module maps and
/// module automorphisms.
#[derive(Clone, Copy, Debug)]
pub struct FrobeniusSampler {
    pub max_dim: usize,
}

impl Sampler<FrobeniusInstance> for FrobeniusSampler {
    fn object(&self, inst: &FrobeniusInstance, rng: &mut ChaCha8Rng) -> NormalForm {
        let n = rng.gen_range(0..=self.max_dim);
        let a = rng.gen_range(0..=n / 2);
        inst.object(a, n - 2 * a)
    }

    fn morphism(&self, inst: &FrobeniusInstance, x: &NormalForm, y: &NormalForm, rng: &mut ChaCha8Rng) -> StableMor {
        let maps = inst.module(x).module_maps(&inst.module(y));
        let mut m = ExactMatrix::zeros(inst.field, y.dim(), x.dim());
        for b in &maps {
            let c = inst.field.random_element(rng);
            m = &m + &b.scale(&c).expect("field");
        }
        StableMor { source: *x, target: *y, matrix: m }
    }

    fn automorphism(&self, inst: &FrobeniusInstance, x: &NormalForm, rng: &mut ChaCha8Rng) -> (StableMor, StableMor) {
        for _ in 0..20 {
            let f = self.morphism(inst, x, x, rng);
            if let Some(inv) = f.matrix.inverse() {
                return (f, StableMor { source: *x, target: *x, matrix: inv });
            }
        }
        let c = inst.field.random_nonzero(rng);
        let ci = c.inverse().expect("nonzero");
        let id = inst.identity(x);
        (inst.scale(&c, &id), inst.scale(&ci, &id))
    }
}
