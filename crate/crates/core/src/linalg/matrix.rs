use std::fmt;

use num_rational::BigRational;

use super::arith::{matmul, rref_in_place, Arith, PArith, QArith};
use super::field::{Field, FieldElement};
use super::LinalgError;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Data {
    Rational(Vec<BigRational>),
    Prime { p: u32, v: Vec<u32> },
}

macro_rules! on_data {
    ($data:expr, $ar:ident, $v:ident => $body:expr) => {
        match $data {
            Data::Rational($v) => {
                let $ar = &QArith;
                $body
            }
            Data::Prime { p, v: $v } => {
                let $ar = &PArith(*p);
                $body
            }
        }
    };
}

/// Builds `Data` of the same variant as a reference arith from a vector.
trait Wrap: Arith {
    fn wrap(&self, v: Vec<Self::E>) -> Data;
}

impl Wrap for QArith {
    fn wrap(&self, v: Vec<BigRational>) -> Data {
        Data::Rational(v)
    }
}

impl Wrap for PArith {
    fn wrap(&self, v: Vec<u32>) -> Data {
        Data::Prime { p: self.0, v }
    }
}

/// Dense matrix over an exact field, stored row-major.
///
/// Every entry shares the field of the matrix; combining matrices over
/// different fields yields [`LinalgError::FieldMismatch`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Data,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        let data = match field {
            Field::Rational => Data::Rational(vec![QArith.zero(); rows * cols]),
            Field::Prime(p) => Data::Prime { p, v: vec![0; rows * cols] },
        };
        ExactMatrix { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> ExactMatrix {
        Self::from_fn(field, n, n, |i, j| FieldElement::from_i64(field, (i == j) as i64))
    }

    /// Builds a matrix entry by entry. Entries must lie in `field`.
    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(field, rows, cols, entries).expect("entry outside the declared field")
    }

    /// Row-major entries; fails on a length mismatch or a foreign field.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<ExactMatrix, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                op: "from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let data = match field {
            Field::Rational => {
                let mut v = Vec::with_capacity(entries.len());
                for e in entries {
                    match e {
                        FieldElement::Rational(q) => v.push(q),
                        other => {
                            return Err(LinalgError::FieldMismatch { left: field, right: other.field() })
                        }
                    }
                }
                Data::Rational(v)
            }
            Field::Prime(p) => {
                let mut v = Vec::with_capacity(entries.len());
                for e in entries {
                    match e {
                        FieldElement::Residue { value, modulus } if modulus == p => v.push(value),
                        other => {
                            return Err(LinalgError::FieldMismatch { left: field, right: other.field() })
                        }
                    }
                }
                Data::Prime { p, v }
            }
        };
        Ok(ExactMatrix { rows, cols, data })
    }

    /// Integer entries given row by row.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| FieldElement::from_i64(field, rows[i][j]))
    }

    /// Integer entries in row-major order.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> ExactMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Self::from_fn(field, rows, cols, |i, j| FieldElement::from_i64(field, entries[i * cols + j]))
    }

    /// Single column from scalars.
    pub fn column(field: Field, entries: Vec<FieldElement>) -> Result<ExactMatrix, LinalgError> {
        let n = entries.len();
        Self::from_entries(field, n, 1, entries)
    }

    pub fn random<R: rand::Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> ExactMatrix {
        Self::from_fn(field, rows, cols, |_, _| field.random_element(rng))
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Data::Rational(_) => Field::Rational,
            Data::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &self.data {
            Data::Rational(v) => FieldElement::Rational(v[k].clone()),
            Data::Prime { p, v } => FieldElement::Residue { value: v[k], modulus: *p },
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        on_data!(&self.data, a, v => v.iter().all(|x| a.is_zero(x)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch { left: self.field(), right: other.field() })
        }
    }

    fn check_shape(&self, other: &ExactMatrix, op: &'static str, ok: bool) -> Result<(), LinalgError> {
        self.check_field(other)?;
        if ok {
            Ok(())
        } else {
            Err(LinalgError::ShapeMismatch { op, left: self.shape(), right: other.shape() })
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_shape(other, "mul", self.cols == other.rows)?;
        let (r, k, c) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Data::Rational(x), Data::Rational(y)) => QArith.wrap(matmul(&QArith, x, y, r, k, c)),
            (Data::Prime { p, v: x }, Data::Prime { v: y, .. }) => {
                let a = PArith(*p);
                a.wrap(matmul(&a, x, y, r, k, c))
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: r, cols: c, data })
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        op: &'static str,
        sub: bool,
    ) -> Result<ExactMatrix, LinalgError> {
        self.check_shape(other, op, self.shape() == other.shape())?;
        let data = match (&self.data, &other.data) {
            (Data::Rational(x), Data::Rational(y)) => Data::Rational(
                x.iter().zip(y).map(|(a, b)| if sub { QArith.sub(a, b) } else { QArith.add(a, b) }).collect(),
            ),
            (Data::Prime { p, v: x }, Data::Prime { v: y, .. }) => {
                let ar = PArith(*p);
                Data::Prime {
                    p: *p,
                    v: x.iter().zip(y).map(|(a, b)| if sub { ar.sub(a, b) } else { ar.add(a, b) }).collect(),
                }
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.zip_with(other, "add", false)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.zip_with(other, "sub", true)
    }

    pub fn neg(&self) -> ExactMatrix {
        let data = on_data!(&self.data, a, v => a.wrap(v.iter().map(|x| a.neg(x)).collect()));
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<ExactMatrix, LinalgError> {
        if c.field() != self.field() {
            return Err(LinalgError::FieldMismatch { left: self.field(), right: c.field() });
        }
        let data = match (&self.data, c) {
            (Data::Rational(v), FieldElement::Rational(q)) => Data::Rational(v.iter().map(|x| x * q).collect()),
            (Data::Prime { p, v }, FieldElement::Residue { value, .. }) => {
                let a = PArith(*p);
                Data::Prime { p: *p, v: v.iter().map(|x| a.mul(x, value)).collect() }
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    // The entry type is `u32` or a rational depending on the field.
    #[allow(clippy::clone_on_copy)]
    pub fn transpose(&self) -> ExactMatrix {
        let (r, c) = self.shape();
        let data = on_data!(&self.data, a, v => {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(v[i * c + j].clone());
                }
            }
            a.wrap(out)
        });
        ExactMatrix { rows: c, cols: r, data }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> ExactMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols, "submatrix range");
        let cols = self.cols;
        let data = on_data!(&self.data, a, v => {
            let mut out = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for i in r0..r1 {
                out.extend_from_slice(&v[i * cols + c0..i * cols + c1]);
            }
            a.wrap(out)
        });
        ExactMatrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    #[allow(clippy::clone_on_copy)]
    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let cols = self.cols;
        let data = on_data!(&self.data, a, v => {
            let mut out = Vec::with_capacity(self.rows * idx.len());
            for i in 0..self.rows {
                for &j in idx {
                    out.push(v[i * cols + j].clone());
                }
            }
            a.wrap(out)
        });
        ExactMatrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let cols = self.cols;
        let data = on_data!(&self.data, a, v => {
            let mut out = Vec::with_capacity(cols * idx.len());
            for &i in idx {
                out.extend_from_slice(&v[i * cols..(i + 1) * cols]);
            }
            a.wrap(out)
        });
        ExactMatrix { rows: idx.len(), cols, data }
    }

    /// Side-by-side concatenation; all blocks need the same row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&ExactMatrix]) -> Result<ExactMatrix, LinalgError> {
        let tr: Vec<ExactMatrix> = blocks.iter().map(|b| b.transpose()).collect();
        let refs: Vec<&ExactMatrix> = tr.iter().collect();
        Ok(Self::vstack(field, rows, &refs)?.transpose())
    }

    /// Vertical concatenation; all blocks need the same column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&ExactMatrix]) -> Result<ExactMatrix, LinalgError> {
        let mut out = ExactMatrix::zeros(field, 0, cols);
        for b in blocks {
            if b.field() != field {
                return Err(LinalgError::FieldMismatch { left: field, right: b.field() });
            }
            if b.cols != cols {
                return Err(LinalgError::ShapeMismatch { op: "vstack", left: (out.rows, cols), right: b.shape() });
            }
            match (&mut out.data, &b.data) {
                (Data::Rational(x), Data::Rational(y)) => x.extend_from_slice(y),
                (Data::Prime { v: x, .. }, Data::Prime { v: y, .. }) => x.extend_from_slice(y),
                _ => unreachable!(),
            }
            out.rows += b.rows;
        }
        Ok(out)
    }

    /// Block matrix from a grid of blocks; every row of the grid must have
    /// consistent heights and every column consistent widths.
    pub fn block(field: Field, grid: &[Vec<&ExactMatrix>]) -> Result<ExactMatrix, LinalgError> {
        let ncols = grid.first().map_or(0, |r| r.len());
        let widths: Vec<usize> = (0..ncols).map(|j| grid[0][j].cols).collect();
        let total: usize = widths.iter().sum();
        let mut rows = Vec::with_capacity(grid.len());
        for row in grid {
            if row.len() != ncols {
                return Err(LinalgError::ShapeMismatch { op: "block", left: (grid.len(), ncols), right: (row.len(), 0) });
            }
            let h = row.first().map_or(0, |b| b.rows);
            for (j, b) in row.iter().enumerate() {
                if b.cols != widths[j] || b.rows != h {
                    return Err(LinalgError::ShapeMismatch { op: "block", left: (h, widths[j]), right: b.shape() });
                }
            }
            rows.push(Self::hstack(field, h, row)?);
        }
        let refs: Vec<&ExactMatrix> = rows.iter().collect();
        Self::vstack(field, total, &refs)
    }

    pub fn block_diag(field: Field, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut entries = vec![field.zero(); r * c];
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    entries[(r0 + i) * c + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::from_entries(field, r, c, entries).expect("block field")
    }

    /// Kronecker product.
    pub fn kron(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_field(other)?;
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let (r, c) = (r1 * r2, c1 * c2);
        let data = match (&self.data, &other.data) {
            (Data::Rational(x), Data::Rational(y)) => QArith.wrap(kron_impl(&QArith, x, y, r1, c1, r2, c2)),
            (Data::Prime { p, v: x }, Data::Prime { v: y, .. }) => {
                let a = PArith(*p);
                a.wrap(kron_impl(&a, x, y, r1, c1, r2, c2))
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: r, cols: c, data })
    }

    /// Row-major entries as a single column.
    pub fn flatten(&self) -> ExactMatrix {
        ExactMatrix { rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    /// Inverse of [`flatten`](Self::flatten) for a column of length `rows*cols`.
    pub fn unflatten(&self, rows: usize, cols: usize) -> ExactMatrix {
        assert_eq!(self.rows * self.cols, rows * cols, "unflatten length");
        ExactMatrix { rows, cols, data: self.data.clone() }
    }

    pub fn rref(&self) -> Rref {
        let (r, c) = self.shape();
        let (data, pivots) = on_data!(&self.data, a, v => {
            let mut m = v.clone();
            let piv = rref_in_place(a, &mut m, r, c);
            (a.wrap(m), piv)
        });
        let rank = pivots.len();
        Rref { reduced: ExactMatrix { rows: r, cols: c, data }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the null space.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = ExactMatrix::zeros(field, self.cols, free.len()).entries();
        let k = free.len();
        for (t, &fc) in free.iter().enumerate() {
            out[fc * k + t] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                out[pc * k + t] = -&reduced.get(row, fc);
            }
        }
        ExactMatrix::from_entries(field, self.cols, k, out).expect("kernel field")
    }

    /// Projection onto a complement of the column space, chosen by pivot order.
    ///
    /// The result `q` has shape `(rows - rank) × rows`, satisfies `q·self = 0`
    /// and has full row rank.
    pub fn cokernel_projection(&self) -> ExactMatrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Columns of `self` forming a basis of its column space.
    pub fn image_basis(&self) -> ExactMatrix {
        let piv = self.rref().pivots;
        self.select_columns(&piv)
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_shape(b, "solve", self.rows == b.rows)?;
        let field = self.field();
        let aug = Self::hstack(field, self.rows, &[self, b])?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = vec![field.zero(); self.cols * b.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[pc * b.cols + j] = reduced.get(row, self.cols + j);
            }
        }
        Self::from_entries(field, self.cols, b.cols, x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let id = Self::identity(self.field(), self.rows);
        let x = self.solve(&id).ok()?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of standard basis vectors that extend the column space of `self`
    /// to the whole ambient space, chosen by pivot order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let n = self.rows;
        let aug = Self::hstack(self.field(), n, &[self, &Self::identity(self.field(), n)]).expect("same field");
        aug.rref().pivots.into_iter().filter(|&p| p >= self.cols).map(|p| p - self.cols).collect()
    }

    /// Standard basis vectors completing the column space to a basis.
    pub fn complement_basis(&self) -> ExactMatrix {
        let idx = self.complement_indices();
        Self::identity(self.field(), self.rows).select_columns(&idx)
    }
}

fn kron_impl<A: Arith>(a: &A, x: &[A::E], y: &[A::E], r1: usize, c1: usize, r2: usize, c2: usize) -> Vec<A::E> {
    let c = c1 * c2;
    let mut out = vec![a.zero(); r1 * r2 * c];
    for i in 0..r1 {
        for j in 0..c1 {
            let xv = &x[i * c1 + j];
            if a.is_zero(xv) {
                continue;
            }
            for k in 0..r2 {
                for l in 0..c2 {
                    out[(i * r2 + k) * c + j * c2 + l] = a.mul(xv, &y[k * c2 + l]);
                }
            }
        }
    }
    out
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}x{}", self.field(), self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "{}", if i == 0 { ": " } else { "; " })?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

// Operator forms for already shape-checked code paths; they panic on misuse.
impl std::ops::Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::mul(self, rhs).expect("matrix product")
    }
}

impl std::ops::Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::add(self, rhs).expect("matrix sum")
    }
}

impl std::ops::Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::sub(self, rhs).expect("matrix difference")
    }
}

impl std::ops::Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix::neg(self)
    }
}
