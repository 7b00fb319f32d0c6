//! Inputs shared by the benchmarks.

use mrbl_core::{LeibnizAlgebra, Matrix, OperatorContext, Representation, Scalar};

/// `[e1, e1] = e3` with `K = diag(1, 0, 0)` of weight 1 and the regular
/// representation.
pub fn g3_k0() -> (LeibnizAlgebra, OperatorContext, Representation) {
    let a = LeibnizAlgebra::new(3, [(0, 0, 2, Scalar::one())]).unwrap();
    let k = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    let r = Representation::regular(&a, k.clone()).unwrap();
    (a, OperatorContext::new(k, Scalar::one()), r)
}

/// A deterministic `n x n` integer matrix of rank about `n / 2`, built as a
/// product of two thin factors from a linear congruential sequence.
pub fn low_rank(n: usize) -> Matrix {
    let mut state: u64 = 0x9e37_79b9;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    let k = n / 2;
    let left = Matrix::from_fn(n, k, |_, _| Scalar::from_int(next()));
    let right = Matrix::from_fn(k, n, |_, _| Scalar::from_int(next()));
    left.mul(&right)
}
