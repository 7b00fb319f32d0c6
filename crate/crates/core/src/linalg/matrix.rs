use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::Scalar;

/// Dense row-major matrix over the rationals.
///
/// A linear map from an `a`-dimensional space to a `b`-dimensional one is a
/// `b x a` matrix whose column `j` is the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input. An empty outer vector gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Scalar]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Matrix with a single nonzero entry `1` at `(r, c)`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m[(r, c)] = Scalar::one();
        m
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add_scaled");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(b * c);
            }
        }
    }

    /// Matrix product; skips zero entries of the left factor.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let mut out = vec![Scalar::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self[(r, k)];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    /// Kronecker product with the left factor indexing the most significant
    /// position: `(A ⊗ B)[(i*p + k, j*q + l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = other.shape();
        let mut out = Matrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * p + k, j * q + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// `acc += c * v`
pub fn vec_axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(x * c);
        }
    }
}

pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
