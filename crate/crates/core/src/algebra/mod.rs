//! Leibniz algebras by structure constants and (modified) Rota-Baxter
//! operators on them.

mod checks;
mod search;

pub(crate) use checks::derived_unchecked;
pub use checks::{
    derived_algebra, is_mrb, leibniz_defect, morphism_defect, mrb_defect, rb_defect, rb_to_mrb, require_leibniz,
    require_mrb,
};
pub use search::{grid_search_operators, EntryMask, GridSearch, DEFAULT_SEARCH_BUDGET};

use std::collections::{BTreeMap, BTreeSet};

use crate::linalg::{vec_axpy, Matrix, Scalar};
use crate::{Error, Result};

/// A finite-dimensional algebra `[e_i, e_j] = Σ_k c_ij^k e_k`.
///
/// Indices are 0-based. Construction does not check the Leibniz identity;
/// use [`leibniz_defect`] to diagnose candidate data.
#[derive(Clone)]
pub struct LeibnizAlgebra {
    dim: usize,
    constants: BTreeMap<(usize, usize, usize), Scalar>,
    // table[i * dim + j] = [e_i, e_j]
    table: Vec<Vec<Scalar>>,
}

impl LeibnizAlgebra {
    /// Builds from sparse `(i, j, k, c)` entries. Zero coefficients are
    /// accepted and dropped; repeated `(i, j, k)` keys are rejected.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut constants = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::IndexOutOfRange(format!(
                    "bracket entry ({}, {}, {}) on dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::DuplicateKey(i + 1, j + 1, k + 1));
            }
            if !c.is_zero() {
                constants.insert((i, j, k), c);
            }
        }
        Ok(Self::from_constants(dim, constants))
    }

    /// Builds from a function giving `[e_i, e_j]` as a coordinate vector.
    pub fn from_table(dim: usize, mut bracket: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut constants = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = bracket(i, j);
                assert_eq!(v.len(), dim, "bracket vector length");
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.insert((i, j, k), c);
                    }
                }
            }
        }
        Self::from_constants(dim, constants)
    }

    /// Reads the bracket from a `dim x dim^2` matrix whose column `i*dim + j`
    /// is `[e_i, e_j]`.
    pub fn from_bracket_cochain(cochain: &Matrix) -> Result<Self> {
        let dim = cochain.rows();
        if cochain.cols() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket cochain is {}x{}, expected {dim}x{}",
                cochain.rows(),
                cochain.cols(),
                dim * dim
            )));
        }
        Ok(Self::from_table(dim, |i, j| cochain.column(i * dim + j)))
    }

    fn from_constants(dim: usize, constants: BTreeMap<(usize, usize, usize), Scalar>) -> Self {
        let mut table = vec![vec![Scalar::zero(); dim]; dim * dim];
        for (&(i, j, k), c) in &constants {
            table[i * dim + j][k] = c.clone();
        }
        LeibnizAlgebra { dim, constants, table }
    }

    /// The algebra with zero bracket.
    pub fn abelian(dim: usize) -> Self {
        Self::from_constants(dim, BTreeMap::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.constants.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[i * self.dim + j][k]
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length");
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `[e_i, ·]`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_columns(
            self.dim,
            &(0..self.dim)
                .map(|j| self.bracket_basis(i, j).to_vec())
                .collect::<Vec<_>>(),
        )
    }

    /// Matrix of `[·, e_i]`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        Matrix::from_columns(
            self.dim,
            &(0..self.dim)
                .map(|j| self.bracket_basis(j, i).to_vec())
                .collect::<Vec<_>>(),
        )
    }

    /// The bracket as a degree-2 cochain: a `dim x dim^2` matrix whose
    /// column `i*dim + j` is `[e_i, e_j]`.
    pub fn bracket_cochain(&self) -> Matrix {
        Matrix::from_columns(self.dim, &self.table)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }
}

impl PartialEq for LeibnizAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl Eq for LeibnizAlgebra {}

impl std::fmt::Debug for LeibnizAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LeibnizAlgebra(dim {}", self.dim)?;
        for (i, j, k, c) in self.constants() {
            write!(f, ", [e{},e{}]∋{}·e{}", i + 1, j + 1, c, k + 1)?;
        }
        write!(f, ")")
    }
}

/// A linear operator on an algebra together with a weight.
///
/// Plain Rota-Baxter operators reuse this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorContext {
    pub operator: Matrix,
    pub weight: Scalar,
}

impl OperatorContext {
    pub fn new(operator: Matrix, weight: Scalar) -> Self {
        OperatorContext { operator, weight }
    }

    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    pub(crate) fn check_against(&self, a: &LeibnizAlgebra) -> Result<()> {
        if self.operator.shape() != (a.dim(), a.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{} on an algebra of dimension {}",
                self.operator.rows(),
                self.operator.cols(),
                a.dim()
            )));
        }
        Ok(())
    }

    /// `K e_i`
    pub fn image(&self, i: usize) -> Vec<Scalar> {
        self.operator.column(i)
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.operator.mul_vec(x)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// `[e1, e1] = e3` in dimension 3.
    pub fn g3() -> LeibnizAlgebra {
        LeibnizAlgebra::new(3, [(0, 0, 2, s(1))]).unwrap()
    }

    pub fn k0() -> OperatorContext {
        OperatorContext::new(Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]), s(1))
    }

    /// `[e1, e2] = e2 = -[e2, e1]`
    pub fn lie2() -> LeibnizAlgebra {
        LeibnizAlgebra::new(2, [(0, 1, 1, s(1)), (1, 0, 1, s(-1))]).unwrap()
    }
}
