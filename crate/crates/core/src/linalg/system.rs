//! Linear systems whose unknowns are matrices, and subquotients of vector spaces.

use super::field::Field;
use super::matrix::ExactMatrix;
use super::LinalgError;

/// Handle to a matrix unknown registered in a [`LinearSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unknown(usize);

/// Equations of the form `Σ Lᵢ·Uᵢ·Rᵢ = C` in matrix unknowns `Uᵢ`.
///
/// Unknowns are flattened row-major, so the coefficient of `U[i][j]` in
/// entry `(a, b)` of `L·U·R` is `L[a][i]·R[j][b]`, i.e. the block `L ⊗ Rᵀ`.
pub struct LinearSystem {
    field: Field,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    width: usize,
    rows: Vec<(Vec<(Unknown, ExactMatrix)>, ExactMatrix)>,
}

/// Affine solution set: `particular + span(kernel columns)` in flattened coordinates.
pub struct SolutionSpace {
    pub particular: ExactMatrix,
    pub kernel: ExactMatrix,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl LinearSystem {
    pub fn new(field: Field) -> LinearSystem {
        LinearSystem { field, shapes: Vec::new(), offsets: Vec::new(), width: 0, rows: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unknown(&mut self, rows: usize, cols: usize) -> Unknown {
        self.shapes.push((rows, cols));
        self.offsets.push(self.width);
        self.width += rows * cols;
        Unknown(self.shapes.len() - 1)
    }

    pub fn unknown_count(&self) -> usize {
        self.width
    }

    /// Adds `Σ left·U·right = rhs`. Terms naming the same unknown are summed.
    pub fn equation(
        &mut self,
        terms: &[(&ExactMatrix, Unknown, &ExactMatrix)],
        rhs: &ExactMatrix,
    ) -> Result<(), LinalgError> {
        let mut blocks: Vec<(Unknown, ExactMatrix)> = Vec::new();
        for (l, u, r) in terms {
            let (ur, uc) = self.shapes[u.0];
            if l.cols() != ur || r.rows() != uc || l.rows() != rhs.rows() || r.cols() != rhs.cols() {
                return Err(LinalgError::ShapeMismatch {
                    op: "equation",
                    left: (l.rows(), r.cols()),
                    right: rhs.shape(),
                });
            }
            let coeff = l.kron(&r.transpose())?;
            match blocks.iter_mut().find(|(v, _)| v == u) {
                Some((_, acc)) => *acc = acc.add(&coeff)?,
                None => blocks.push((*u, coeff)),
            }
        }
        self.rows.push((blocks, rhs.flatten()));
        Ok(())
    }

    /// Coefficient matrix and right-hand side column.
    pub fn assemble(&self) -> (ExactMatrix, ExactMatrix) {
        let total: usize = self.rows.iter().map(|(_, c)| c.rows()).sum();
        let mut entries = vec![self.field.zero(); total * self.width];
        let mut rhs = Vec::with_capacity(total);
        let mut r0 = 0;
        for (blocks, c) in &self.rows {
            for (u, m) in blocks {
                let off = self.offsets[u.0];
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        let e = m.get(i, j);
                        if !e.is_zero() {
                            entries[(r0 + i) * self.width + off + j] = e;
                        }
                    }
                }
            }
            rhs.extend(c.entries());
            r0 += c.rows();
        }
        let a = ExactMatrix::from_entries(self.field, total, self.width, entries).expect("system field");
        let b = ExactMatrix::column(self.field, rhs).expect("system field");
        (a, b)
    }

    pub fn solve(&self) -> Result<Vec<ExactMatrix>, LinalgError> {
        let (a, b) = self.assemble();
        let x = a.solve(&b)?;
        Ok(split(&x, &self.shapes, &self.offsets))
    }

    pub fn solution_space(&self) -> Result<SolutionSpace, LinalgError> {
        let (a, b) = self.assemble();
        let particular = a.solve(&b)?;
        Ok(SolutionSpace {
            particular,
            kernel: a.kernel_basis(),
            shapes: self.shapes.clone(),
            offsets: self.offsets.clone(),
        })
    }
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.kernel.cols()
    }

    pub fn particular_parts(&self) -> Vec<ExactMatrix> {
        split(&self.particular, &self.shapes, &self.offsets)
    }

    /// The unknowns of the `k`-th homogeneous basis solution.
    pub fn kernel_parts(&self, k: usize) -> Vec<ExactMatrix> {
        let col = self.kernel.submatrix(0, self.kernel.rows(), k, k + 1);
        split(&col, &self.shapes, &self.offsets)
    }
}

fn split(x: &ExactMatrix, shapes: &[(usize, usize)], offsets: &[usize]) -> Vec<ExactMatrix> {
    shapes
        .iter()
        .zip(offsets)
        .map(|(&(r, c), &off)| x.submatrix(off, off + r * c, 0, 1).unflatten(r, c))
        .collect()
}

/// A subquotient `Z/B` of `K^n` with `B ⊆ Z`, with a fixed basis of
/// representatives and a coordinate projection valid on `Z`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// `n × q`: representatives of a basis of `Z/B`.
    pub representatives: ExactMatrix,
    /// `q × n`: coordinates of the class of any vector of `Z`.
    pub projection: ExactMatrix,
}

impl Subquotient {
    /// `z` and `b` hold spanning columns of `Z` and of `B ⊆ Z`.
    pub fn new(z: &ExactMatrix, b: &ExactMatrix) -> Subquotient {
        let field = z.field();
        let n = z.rows();
        let bb = b.image_basis();
        let joined = ExactMatrix::hstack(field, n, &[&bb, z]).expect("same ambient space");
        let piv = joined.rref().pivots;
        let q_idx: Vec<usize> = piv.iter().filter(|&&p| p >= bb.cols()).map(|&p| p - bb.cols()).collect();
        let reps = z.select_columns(&q_idx);
        let full = ExactMatrix::hstack(field, n, &[&bb, &reps]).expect("same ambient space");
        let m = full.cols();
        if m == 0 {
            return Subquotient {
                representatives: reps,
                projection: ExactMatrix::zeros(field, 0, n),
            };
        }
        // Rows of `full` forming an invertible block pick out a left inverse.
        let rows = full.transpose().rref().pivots;
        let square = full.select_rows(&rows);
        let inv = square.inverse().expect("selected rows are independent");
        let selector = ExactMatrix::identity(field, n).select_rows(&rows);
        let left_inverse = &inv * &selector;
        let projection = left_inverse.submatrix(bb.cols(), m, 0, n);
        Subquotient { representatives: reps, projection }
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Coordinates of the class of `v ∈ Z` (a column).
    pub fn coordinates(&self, v: &ExactMatrix) -> ExactMatrix {
        &self.projection * v
    }
}
