//! Fraction-preserving Gaussian elimination.
//!
//! Pivot choice: among the candidate rows, the nonzero entry with the smallest
//! absolute numerator (lowest row index on ties). The reduced echelon form is
//! unique, so kernel bases and solutions do not depend on this choice.

use num_bigint::BigInt;

use super::{Matrix, Scalar};
use crate::Error;

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct Rows {
    rows: Vec<Vec<Scalar>>,
    cols: usize,
}

impl Rows {
    fn new(m: &Matrix) -> Self {
        Rows {
            rows: m.row_vectors(),
            cols: m.cols(),
        }
    }

    fn choose_pivot(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, BigInt)> = None;
        for r in from..self.rows.len() {
            let x = &self.rows[r][col];
            if x.is_zero() {
                continue;
            }
            let size = x.abs_numer();
            match &best {
                Some((_, b)) if *b <= size => {}
                _ => best = Some((r, size)),
            }
        }
        best.map(|(r, _)| r)
    }

    /// Subtracts `factor * rows[src]` from `rows[dst]`, touching only the
    /// listed support columns of the source row.
    fn eliminate(&mut self, dst: usize, src: usize, col: usize, support: &[usize]) {
        let factor = self.rows[dst][col].clone() / &self.rows[src][col];
        let (d, s) = if dst < src {
            let (a, b) = self.rows.split_at_mut(src);
            (&mut a[dst], &b[0])
        } else {
            let (a, b) = self.rows.split_at_mut(dst);
            (&mut b[0], &a[src])
        };
        for &c in support {
            d[c] -= &(&s[c] * &factor);
        }
    }

    fn support(&self, r: usize, from: usize) -> Vec<usize> {
        (from..self.cols).filter(|&c| !self.rows[r][c].is_zero()).collect()
    }

    /// Forward elimination restricted to the first `limit` columns; returns
    /// the pivot columns. With `jordan`, also clears entries above pivots and
    /// normalizes pivots to one.
    fn run(&mut self, limit: usize, jordan: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..limit {
            if rank == self.rows.len() {
                break;
            }
            let Some(p) = self.choose_pivot(col, rank) else {
                continue;
            };
            self.rows.swap(rank, p);
            if jordan {
                let inv = self.rows[rank][col].recip();
                for x in self.rows[rank][col..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let support = self.support(rank, col);
            let start = if jordan { 0 } else { rank + 1 };
            for r in start..self.rows.len() {
                if r != rank && !self.rows[r][col].is_zero() {
                    self.eliminate(r, rank, col, &support);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    fn into_matrix(self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zeros(0, self.cols);
        }
        Matrix::from_rows(self.rows)
    }
}

/// Gauss-Jordan reduction over all columns.
pub fn reduce(m: &Matrix) -> Echelon {
    let mut rows = Rows::new(m);
    let pivots = rows.run(m.cols(), true);
    Echelon {
        reduced: rows.into_matrix(),
        pivots,
    }
}

/// Gauss-Jordan reduction pivoting only within the first `limit` columns
/// (used for augmented systems).
fn reduce_limited(m: &Matrix, limit: usize) -> Echelon {
    let mut rows = Rows::new(m);
    let pivots = rows.run(limit, true);
    Echelon {
        reduced: rows.into_matrix(),
        pivots,
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows() < m.cols() {
        let t = m.transpose();
        let mut rows = Rows::new(&t);
        rows.run(t.cols(), false).len()
    } else {
        let mut rows = Rows::new(m);
        rows.run(m.cols(), false).len()
    }
}

/// Basis of the null space, one vector per free column in increasing
/// column order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let ech = reduce(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                let x = &ech.reduced[(i, f)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect()
}

/// Right inverse `S` with `M S = I`; free variables are set to zero.
pub fn solve_right_inverse(m: &Matrix) -> Result<Matrix, Error> {
    let (r, c) = m.shape();
    let aug = m.hstack(&Matrix::identity(r));
    let ech = reduce_limited(&aug, c);
    if ech.rank() < r {
        return Err(Error::NotSurjective {
            rank: ech.rank(),
            rows: r,
        });
    }
    let mut s = Matrix::zeros(c, r);
    for (i, &p) in ech.pivots.iter().enumerate() {
        for k in 0..r {
            s[(p, k)] = ech.reduced[(i, c + k)].clone();
        }
    }
    Ok(s)
}

/// Left inverse `L` with `L M = I`, the transpose of a right inverse of `Mᵀ`.
pub fn solve_left_inverse(m: &Matrix) -> Result<Matrix, Error> {
    match solve_right_inverse(&m.transpose()) {
        Ok(s) => Ok(s.transpose()),
        Err(Error::NotSurjective { rank, .. }) => Err(Error::NotInjective { rank, cols: m.cols() }),
        Err(e) => Err(e),
    }
}

/// Some solution of `M x = b` (free variables zero), or `None`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length");
    let c = m.cols();
    let aug = m.hstack(&Matrix::column_vector(b));
    let ech = reduce_limited(&aug, c + 1);
    if ech.pivots.last() == Some(&c) {
        return None;
    }
    let mut x = vec![Scalar::zero(); c];
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.reduced[(i, c)].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_is_zero;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 3)), 0);
        assert_eq!(rank(&Matrix::zeros(3, 0)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
        let k = kernel_basis(&Matrix::from_int_rows(&[&[1, -1]]));
        assert_eq!(k, vec![vec![Scalar::one(), Scalar::one()]]);
        let k = kernel_basis(&Matrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v, &crate::linalg::basis_vector(3, i));
        }
    }

    #[test]
    fn right_inverse_examples() {
        assert!(solve_right_inverse(&Matrix::identity(3)).unwrap().is_identity());
        let s = solve_right_inverse(&Matrix::from_int_rows(&[&[1, 0]])).unwrap();
        assert_eq!(s, Matrix::from_int_rows(&[&[1], &[0]]));
        assert!(matches!(
            solve_right_inverse(&Matrix::from_int_rows(&[&[1], &[0]])),
            Err(Error::NotSurjective { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn fractional_pivots() {
        let m = Matrix::from_int_rows(&[&[2, 3, 5], &[4, 1, 7], &[6, 4, 12]]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.mul_vec(&k[0])));
        let b = vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve(&m, &[Scalar::one(), Scalar::zero(), Scalar::zero()]).is_none());
    }

    #[test]
    fn left_inverse() {
        let m = Matrix::from_int_rows(&[&[0], &[0], &[3]]);
        let l = solve_left_inverse(&m).unwrap();
        assert!(l.mul(&m).is_identity());
        assert!(matches!(
            solve_left_inverse(&Matrix::zeros(2, 1)),
            Err(Error::NotInjective { .. })
        ));
    }
}
