//! Finite-dimensional vector spaces over an exact field with `Σ = id`.
//!
//! Triangles are the sequences exact at all three objects. The cone of
//! `f: X → Y` is `ker f ⊕ coker f` with `f' = (0; p_f)` and `f'' = (i_f | 0)`,
//! where `i_f` is the kernel inclusion and `p_f` the cokernel projection.

use crate::category::{Biproduct, CatError, HomSpace, Octahedron, Triangle, TriangleMorphism, Triangulated};
use crate::linalg::{ExactMatrix, Field, FieldElement, LinalgError};
use rand::Rng;

/// `K^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VectSpace {
    pub dim: usize,
    pub field: Field,
}

#[derive(Clone, Copy, Debug)]
pub struct VectInstance {
    field: Field,
}

impl VectInstance {
    pub fn new(field: Field) -> Self {
        VectInstance { field }
    }

    pub fn space(&self, dim: usize) -> VectSpace {
        VectSpace { dim, field: self.field }
    }

    fn kernel_inclusion(f: &ExactMatrix) -> ExactMatrix {
        f.kernel_basis()
    }

    fn cokernel_projection(f: &ExactMatrix) -> ExactMatrix {
        f.cokernel_projection()
    }

    /// Exactness at the middle of `a` then `b`: `b∘a = 0` and `rank a + rank b = dim`.
    fn exact_at(a: &ExactMatrix, b: &ExactMatrix) -> bool {
        (b * a).is_zero() && a.rank() + b.rank() == a.rows()
    }

    /// Counts of the three elementary triangle types in `t`, with an
    /// isomorphism from the standard sum of elementary triangles onto `t`.
    pub fn decompose_triangle(&self, t: &Triangle<ExactMatrix>) -> Result<TriangleDecomposition, CatError> {
        if !self.is_triangle(t) {
            return Err(CatError::NotATriangle("sequence is not exact".into()));
        }
        let field = self.field;
        let (f, g, h) = (&t.f, &t.g, &t.h);
        let (n1, n2, n3) = (f.rank(), g.rank(), h.rank());
        let xs = f.kernel_basis().complement_basis();
        let ys = f.complement_basis();
        let zs = g.complement_basis();
        let alpha = ExactMatrix::hstack(field, f.cols(), &[&xs, &(h * &zs)])?;
        let beta = ExactMatrix::hstack(field, f.rows(), &[&(f * &xs), &ys])?;
        let gamma = ExactMatrix::hstack(field, g.rows(), &[&(g * &ys), &zs])?;
        let standard = standard_triangle(field, n1, n2, n3);
        let iso = TriangleMorphism { source: standard, target: t.clone(), a: alpha, b: beta, c: gamma };
        Ok(TriangleDecomposition { counts: (n1, n2, n3), iso })
    }
}

/// Result of [`VectInstance::decompose_triangle`].
#[derive(Clone, Debug)]
pub struct TriangleDecomposition {
    /// Copies of `(X = X → 0 → X)`, `(0 → X = X → 0)` and `(X → 0 → X = X)`.
    pub counts: (usize, usize, usize),
    /// Isomorphism from the standard form onto the decomposed triangle.
    pub iso: TriangleMorphism<ExactMatrix>,
}

/// The direct sum of `n1`, `n2`, `n3` copies of the three elementary triangles
/// on `K^{n1+n3} → K^{n1+n2} → K^{n2+n3} → K^{n1+n3}`.
pub fn standard_triangle(field: Field, n1: usize, n2: usize, n3: usize) -> Triangle<ExactMatrix> {
    let one = |b: bool| FieldElement::from_i64(field, b as i64);
    let f = ExactMatrix::from_fn(field, n1 + n2, n1 + n3, |i, j| one(i == j && i < n1));
    let g = ExactMatrix::from_fn(field, n2 + n3, n1 + n2, |i, j| one(i < n2 && j == n1 + i));
    let h = ExactMatrix::from_fn(field, n1 + n3, n2 + n3, |i, j| one(i >= n1 && j >= n2 && i - n1 == j - n2));
    Triangle::new(f, g, h)
}

fn shape_err(e: LinalgError) -> CatError {
    match e {
        LinalgError::ShapeMismatch { .. } | LinalgError::FieldMismatch { .. } => CatError::ShapeMismatch(e.to_string()),
        other => CatError::Linalg(other),
    }
}

impl Triangulated for VectInstance {
    type Obj = VectSpace;
    type Mor = ExactMatrix;

    fn name(&self) -> String {
        format!("vect over {}", self.field)
    }

    fn field(&self) -> Field {
        self.field
    }

    fn display_obj(&self, x: &VectSpace) -> String {
        format!("K^{}", x.dim)
    }

    fn source(&self, f: &ExactMatrix) -> VectSpace {
        VectSpace { dim: f.cols(), field: f.field() }
    }

    fn target(&self, f: &ExactMatrix) -> VectSpace {
        VectSpace { dim: f.rows(), field: f.field() }
    }

    fn identity(&self, x: &VectSpace) -> ExactMatrix {
        ExactMatrix::identity(x.field, x.dim)
    }

    fn zero(&self, x: &VectSpace, y: &VectSpace) -> ExactMatrix {
        ExactMatrix::zeros(self.field, y.dim, x.dim)
    }

    fn compose(&self, g: &ExactMatrix, f: &ExactMatrix) -> Result<ExactMatrix, CatError> {
        g.mul(f).map_err(shape_err)
    }

    fn add(&self, f: &ExactMatrix, g: &ExactMatrix) -> Result<ExactMatrix, CatError> {
        f.add(g).map_err(shape_err)
    }

    fn negate(&self, f: &ExactMatrix) -> ExactMatrix {
        f.neg()
    }

    fn scale(&self, c: &FieldElement, f: &ExactMatrix) -> ExactMatrix {
        f.scale(c).expect("scalar in the instance field")
    }

    fn suspend_obj(&self, x: &VectSpace) -> VectSpace {
        *x
    }

    fn suspend_mor(&self, f: &ExactMatrix) -> ExactMatrix {
        f.clone()
    }

    fn desuspend_obj(&self, x: &VectSpace) -> VectSpace {
        *x
    }

    fn desuspend_mor(&self, f: &ExactMatrix) -> ExactMatrix {
        f.clone()
    }

    fn zero_object(&self) -> VectSpace {
        self.space(0)
    }

    fn biproduct(&self, x: &VectSpace, y: &VectSpace) -> Biproduct<VectSpace, ExactMatrix> {
        let n = x.dim + y.dim;
        let id = ExactMatrix::identity(self.field, n);
        let i1 = id.submatrix(0, n, 0, x.dim);
        let i2 = id.submatrix(0, n, x.dim, n);
        Biproduct { object: self.space(n), p1: i1.transpose(), p2: i2.transpose(), i1, i2 }
    }

    fn cone(&self, f: &ExactMatrix) -> Triangle<ExactMatrix> {
        let field = self.field;
        let i = Self::kernel_inclusion(f);
        let p = Self::cokernel_projection(f);
        let (n1, n2) = (i.cols(), p.rows());
        let g = ExactMatrix::vstack(field, f.rows(), &[&ExactMatrix::zeros(field, n1, f.rows()), &p])
            .expect("cone blocks");
        let h = ExactMatrix::hstack(field, f.cols(), &[&i, &ExactMatrix::zeros(field, f.cols(), n2)])
            .expect("cone blocks");
        Triangle::new(f.clone(), g, h)
    }

    fn octahedron(&self, f: &ExactMatrix, g: &ExactMatrix) -> Result<Octahedron<ExactMatrix>, CatError> {
        let field = self.field;
        let h = self.compose(g, f)?;
        let (i_f, i_g, i_h) = (f.kernel_basis(), g.kernel_basis(), h.kernel_basis());
        let (p_f, p_g, p_h) = (f.cokernel_projection(), g.cokernel_projection(), h.cokernel_projection());
        let j1 = i_h.solve(&i_f)?;
        let j2 = i_g.solve(&(f * &i_h))?;
        let q1 = p_f.transpose().solve(&(&p_h * g).transpose())?.transpose();
        let q2 = p_h.transpose().solve(&p_g.transpose())?.transpose();
        let first = self.cone(f);
        let second = self.cone(g);
        let composite = self.cone(&h);
        let k = ExactMatrix::block_diag(field, &[&j1, &q1]);
        let k1 = ExactMatrix::block_diag(field, &[&j2, &q2]);
        let k2 = self.compose(&self.suspend_mor(&first.g), &second.h)?;
        Ok(Octahedron { first, second, composite, k, k1, k2 })
    }

    fn mor_equal(&self, f: &ExactMatrix, g: &ExactMatrix) -> bool {
        f == g
    }

    fn hom_space(&self, x: &VectSpace, y: &VectSpace) -> HomSpace<ExactMatrix> {
        let n = x.dim * y.dim;
        let basis = (0..n)
            .map(|k| ExactMatrix::from_fn(self.field, y.dim, x.dim, |i, j| {
                FieldElement::from_i64(self.field, (i * x.dim + j == k) as i64)
            }))
            .collect();
        HomSpace { basis, projection: ExactMatrix::identity(self.field, n) }
    }

    fn flatten(&self, f: &ExactMatrix) -> ExactMatrix {
        f.flatten()
    }

    fn obj_iso(&self, x: &VectSpace, y: &VectSpace) -> Option<(ExactMatrix, ExactMatrix)> {
        (x == y).then(|| (self.identity(x), self.identity(x)))
    }

    /// Exactness at `Y`, `Z` and `X` (the last read as `im h = ker f`).
    fn is_triangle(&self, t: &Triangle<ExactMatrix>) -> bool {
        if crate::category::check_candidate(self, t).is_err() {
            return false;
        }
        Self::exact_at(&t.f, &t.g) && Self::exact_at(&t.g, &t.h) && Self::exact_at(&t.h, &t.f)
    }

    fn inverse(&self, f: &ExactMatrix) -> Option<ExactMatrix> {
        f.inverse()
    }

    fn is_zero_object(&self, x: &VectSpace) -> bool {
        x.dim == 0
    }
}

/// Random spaces up to `max_dim` and random matrices of varying rank.
#[derive(Clone, Copy, Debug)]
pub struct VectSampler {
    pub max_dim: usize,
}

impl crate::toolkit::Sampler<VectInstance> for VectSampler {
    fn object(&self, inst: &VectInstance, rng: &mut rand_chacha::ChaCha8Rng) -> VectSpace {
        inst.space(rng.gen_range(0..=self.max_dim))
    }

    fn morphism(&self, inst: &VectInstance, x: &VectSpace, y: &VectSpace, rng: &mut rand_chacha::ChaCha8Rng) -> ExactMatrix {
        // A product through a random middle dimension gives every rank a fair chance.
        let mid = rng.gen_range(0..=x.dim.min(y.dim));
        let a = ExactMatrix::random(inst.field, y.dim, mid, rng);
        let b = ExactMatrix::random(inst.field, mid, x.dim, rng);
        &a * &b
    }

    fn automorphism(&self, inst: &VectInstance, x: &VectSpace, rng: &mut rand_chacha::ChaCha8Rng) -> (ExactMatrix, ExactMatrix) {
        loop {
            let a = ExactMatrix::random(inst.field, x.dim, x.dim, rng);
            if let Some(inv) = a.inverse() {
                return (a, inv);
            }
        }
    }
}
