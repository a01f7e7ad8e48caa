//! Dense exact matrices and deterministic Gaussian elimination.
//!
//! Pivoting always picks the first nonzero entry, so every basis produced
//! here is reproducible. Zero-by-n and n-by-zero matrices are legal.

use crate::scalar::Scalar;


#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].render()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_integer(v)).collect())
                .collect(),
        )
    }

    pub fn column(entries: Vec<S>) -> Self {
        let rows = entries.len();
        Matrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.clone() * s.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() + y.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() - y.clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = -x.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix_cols(&self, keep: &[usize]) -> Self {
        let mut out = Self::zero(self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form; returns the transformed matrix and the
    /// pivot columns in order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot_row else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m[(row, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(row, j)] = b;
                    m[(p, j)] = a;
                }
            }
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in 0..m.cols {
                        let delta = factor.clone() * m[(row, j)].clone();
                        m[(r, j)] = m[(r, j)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the kernel, in the deterministic RREF basis.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Self::zero(self.cols, free.len());
        for (k, &fj) in free.iter().enumerate() {
            out[(fj, k)] = S::one();
            for (prow, &pj) in pivots.iter().enumerate() {
                out[(pj, k)] = -r[(prow, fj)].clone();
            }
        }
        out
    }

    /// The original columns at the pivot positions.
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        self.submatrix_cols(&pivots)
    }

    /// Solve `self * X = rhs` for all columns at once; free variables are
    /// set to zero. Returns `None` when some column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // a pivot in the rhs block means inconsistency
        let real_pivots: Vec<usize> = pivots.iter().cloned().filter(|&c| c < self.cols).collect();
        if real_pivots.len() != pivots.len() {
            return None;
        }
        let mut x = Self::zero(self.cols, rhs.cols);
        for (prow, &pcol) in real_pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pcol, j)] = r[(prow, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(rhs.cols, 1, "solve expects a column");
        self.solve_matrix(rhs)
    }

    /// Split an exact idempotent e = I * P with P * I = id.
    pub fn split_idempotent(&self) -> Result<(Self, Self), String> {
        if self.rows != self.cols {
            return Err("idempotent must be square".into());
        }
        if self.mul(self) != *self {
            return Err("matrix is not idempotent".into());
        }
        let image = self.image_basis();
        // e maps into its own image, and P is the unique coordinate matrix
        let p = image
            .solve_matrix(self)
            .expect("idempotent image solve must succeed");
        debug_assert_eq!(p.mul(&image), Matrix::identity(image.cols()));
        Ok((p, image))
    }
}

/// A dense linear system `A x = b` accumulated row by row; the unknown
/// vector is indexed 0..cols.
pub struct LinSys<S> {
    cols: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
}

impl<S: Scalar> LinSys<S> {
    pub fn new(cols: usize) -> Self {
        LinSys {
            cols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.cols
    }

    pub fn push(&mut self, coeffs: impl IntoIterator<Item = (usize, S)>, rhs: S) {
        let mut row = vec![S::zero(); self.cols];
        for (idx, c) in coeffs {
            debug_assert!(idx < self.cols);
            row[idx] = row[idx].clone() + c;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn matrices(&self) -> (Matrix<S>, Matrix<S>) {
        let a = Matrix::from_rows(self.rows.clone());
        let b = Matrix::column(self.rhs.clone());
        (a, b)
    }

    /// A particular solution, if one exists.
    pub fn solve(&self) -> Option<Vec<S>> {
        if self.rows.is_empty() {
            return Some(vec![S::zero(); self.cols]);
        }
        let (a, b) = self.matrices();
        a.solve(&b).map(|x| x.col(0))
    }

    /// Particular solution plus a basis of the homogeneous solution space.
    pub fn solve_affine(&self) -> Option<(Vec<S>, Matrix<S>)> {
        if self.rows.is_empty() {
            return Some((vec![S::zero(); self.cols], Matrix::identity(self.cols)));
        }
        let (a, b) = self.matrices();
        let part = a.solve(&b)?.col(0);
        Some((part, a.kernel_basis()))
    }

    /// Basis of the homogeneous solution space (rhs ignored).
    pub fn kernel(&self) -> Matrix<S> {
        if self.rows.is_empty() {
            return Matrix::identity(self.cols);
        }
        let (a, _) = self.matrices();
        a.kernel_basis()
    }
}
