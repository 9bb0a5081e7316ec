use std::fmt;

use crate::poly::Poly;
use crate::scalar::Field;
use crate::vector::Vector;

/// Dense row-major matrix over a field. The 0×0 matrix is legal and shows up
/// whenever the nonsingular or nilpotent summand of a splitting is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form plus the pivot bookkeeping most callers need.
pub struct Echelon<T> {
    pub matrix: Matrix<T>,
    pub pivot_cols: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| T::from_i64(n)).collect())
                .collect(),
        )
    }

    /// Builds an n×k matrix from k column vectors; `rows` disambiguates the
    /// height when the column list is empty.
    pub fn from_columns(rows: usize, cols: &[Vector<T>]) -> Self {
        for c in cols {
            assert_eq!(c.dim(), rows, "column height mismatch");
        }
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j].entries()[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = T::zero();
                    for k in 0..self.cols {
                        acc = acc + self[(i, k)].clone() * v.entries()[k].clone();
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Repeated squaring.
    pub fn pow(&self, mut e: usize) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let (r1, c1) = (self.rows, self.cols);
        Matrix::from_fn(r1 + other.rows, c1 + other.cols, |i, j| {
            if i < r1 && j < c1 {
                self[(i, j)].clone()
            } else if i >= r1 && j >= c1 {
                other[(i - r1, j - c1)].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)].clone())
    }

    /// Reduced row echelon form. Pivot selection takes the smallest-complexity
    /// nonzero candidate in the pivot column to limit coefficient growth.
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pr = 0;
        for pc in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for r in pr..m.rows {
                if !m[(r, pc)].is_zero() {
                    let cx = m[(r, pc)].complexity();
                    if best.map_or(true, |(_, b)| cx < b) {
                        best = Some((r, cx));
                    }
                }
            }
            let Some((r, _)) = best else { continue };
            m.swap_rows(pr, r);
            let inv = m[(pr, pc)].inv();
            for j in pc..m.cols {
                m[(pr, j)] = m[(pr, j)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != pr && !m[(r, pc)].is_zero() {
                    let factor = m[(r, pc)].clone();
                    for j in pc..m.cols {
                        m[(r, j)] = m[(r, j)].clone() - factor.clone() * m[(pr, j)].clone();
                    }
                }
            }
            pivot_cols.push(pc);
            pr += 1;
        }
        Echelon {
            matrix: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivot_cols.len()
    }

    /// One exact solution of `self · x = v`, or `None` when inconsistent.
    /// Free variables are pinned to zero, which makes the answer deterministic.
    pub fn solve_linear(&self, v: &Vector<T>) -> Option<Vector<T>> {
        assert_eq!(self.rows, v.dim(), "right-hand side dimension mismatch");
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                v.entries()[i].clone()
            }
        });
        let ech = aug.rref();
        aug = ech.matrix;
        if ech.pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &pc) in ech.pivot_cols.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Some(Vector::new(x))
    }

    /// Basis of the null space, read off the free columns of the rref.
    pub fn kernel_basis(&self) -> Vec<Vector<T>> {
        let ech = self.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &ech.pivot_cols {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in ech.pivot_cols.iter().enumerate() {
                v[pc] = -ech.matrix[(row, free)].clone();
            }
            basis.push(Vector::new(v));
        }
        basis
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image_basis(&self) -> Vec<Vector<T>> {
        self.rref()
            .pivot_cols
            .iter()
            .map(|&c| self.column(c))
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let ech = aug.rref();
        if (0..n).any(|j| ech.pivot_cols.get(j) != Some(&j)) {
            return None;
        }
        Some(ech.matrix.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut best: Option<(usize, u64)> = None;
            for r in col..n {
                if !m[(r, col)].is_zero() {
                    let cx = m[(r, col)].complexity();
                    if best.map_or(true, |(_, b)| cx < b) {
                        best = Some((r, cx));
                    }
                }
            }
            let Some((r, _)) = best else {
                return T::zero();
            };
            if r != col {
                m.swap_rows(col, r);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv();
            for rr in col + 1..n {
                if !m[(rr, col)].is_zero() {
                    let factor = m[(rr, col)].clone() * inv.clone();
                    for j in col..n {
                        m[(rr, j)] = m[(rr, j)].clone() - factor.clone() * m[(col, j)].clone();
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Monic characteristic polynomial det(xI − A), by the Faddeev–LeVerrier
    /// recurrence (exact in characteristic zero). The 0×0 matrix yields the
    /// constant 1 so that characteristic polynomials multiply across direct
    /// sums.
    pub fn char_poly(&self) -> Poly<T> {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = -(am.trace() / T::from_i64(k as i64));
            coeffs[n - k] = c.clone();
            if k < n {
                m = am;
                for i in 0..n {
                    m[(i, i)] = m[(i, i)].clone() + c.clone();
                }
            }
        }
        Poly::new(coeffs)
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
