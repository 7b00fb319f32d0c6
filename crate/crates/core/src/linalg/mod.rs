//! Exact rational scalars, dense matrices, multi-indices and the
//! rank/kernel/solve primitives.

mod elim;
mod matrix;
mod multi_index;
mod scalar;

pub use elim::{kernel_basis, rank, reduce, solve, solve_left_inverse, solve_right_inverse, Echelon};
pub use matrix::{basis_vector, vec_add, vec_axpy, vec_is_zero, vec_scale, vec_sub, Matrix};
pub use multi_index::{count, flat_position, MultiIndex};
pub use scalar::{ParseScalarError, Scalar};
