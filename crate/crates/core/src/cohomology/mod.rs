//! Cochain complexes of a modified Rota-Baxter Leibniz algebra with
//! coefficients in a representation: the Leibniz complex (δ), the operator
//! complex (∂, the Leibniz complex of the derived algebra with the induced
//! representation), the chain map Φ between them, and the cone of Φ.
//!
//! Every differential is an explicit matrix in cochain coordinates, built
//! column by column by evaluating on basis cochains.

mod cochain;
pub mod eval;
mod report;

pub use cochain::{Cochain, ConeCochain};
pub use report::{
    classify_cochain, cohomology_dimensions, leibniz_cohomology, Classification, CohomologyOptions, CohomologyReport,
    ComplexSummary, DegreeSummary, DEFAULT_CELL_BUDGET, DEFAULT_DEGREE_BOUND,
};

use rayon::prelude::*;

use crate::algebra::{derived_unchecked, LeibnizAlgebra, OperatorContext};
use crate::linalg::{count, Matrix, Scalar};
use crate::rep::{induced_rep, Representation};
use crate::Result;

use eval::{apply_delta, apply_phi};

fn basis_cochain(m: usize, d: usize, n: usize, p: usize) -> Cochain {
    let mut coords = vec![Scalar::zero(); m * count(d, n)];
    coords[p] = Scalar::one();
    Cochain::from_coordinates(m, d, n, &coords).expect("basis cochain shape")
}

/// Matrix of a linear map on `C^n(g, V)` from its action on basis cochains.
fn assemble(m: usize, d: usize, n: usize, rows: usize, map: impl Fn(&Cochain) -> Cochain + Sync) -> Matrix {
    let columns: Vec<Vec<Scalar>> = (0..m * count(d, n))
        .into_par_iter()
        .map(|p| map(&basis_cochain(m, d, n, p)).coordinates())
        .collect();
    Matrix::from_columns(rows, &columns)
}

fn delta_unchecked(a: &LeibnizAlgebra, r: &Representation, n: usize) -> Matrix {
    let (m, d) = (r.dim_v(), a.dim());
    assemble(m, d, n, m * count(d, n + 1), |f| apply_delta(a, r, f))
}

/// Matrix of `δ^n: C^n(g, V) -> C^{n+1}(g, V)`.
pub fn delta_matrix(a: &LeibnizAlgebra, r: &Representation, n: usize) -> Result<Matrix> {
    r.check_against(a)?;
    Ok(delta_unchecked(a, r, n))
}

/// Matrix of `∂^n`, the coboundary of the derived algebra with the induced
/// representation.
pub fn partial_matrix(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation, n: usize) -> Result<Matrix> {
    Ok(MrbComplex::new(a, ctx, r)?.partial(n))
}

/// Matrix of the chain map `Φ^n` (see [`eval::apply_phi`]).
pub fn phi_matrix(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation, n: usize) -> Result<Matrix> {
    Ok(MrbComplex::new(a, ctx, r)?.phi(n))
}

/// Matrix of the cone differential `d^n` (see [`MrbComplex::cone`]).
pub fn cone_differential(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation, n: usize) -> Result<Matrix> {
    Ok(MrbComplex::new(a, ctx, r)?.cone(n))
}

/// Validated data for the three complexes, with the derived algebra and
/// induced representation computed once.
#[derive(Debug, Clone)]
pub struct MrbComplex {
    algebra: LeibnizAlgebra,
    ctx: OperatorContext,
    rep: Representation,
    derived: LeibnizAlgebra,
    induced: Representation,
}

impl MrbComplex {
    /// Checks the Leibniz identity, the operator identity and both
    /// representation axioms.
    pub fn new(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation) -> Result<Self> {
        let induced = induced_rep(a, ctx, r)?;
        Ok(MrbComplex {
            algebra: a.clone(),
            ctx: ctx.clone(),
            rep: r.clone(),
            derived: derived_unchecked(a, ctx),
            induced,
        })
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn ctx(&self) -> &OperatorContext {
        &self.ctx
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn derived(&self) -> &LeibnizAlgebra {
        &self.derived
    }

    pub fn induced(&self) -> &Representation {
        &self.induced
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `dim C^n(g, V)`; the operator complex has the same cochain spaces.
    pub fn leib_dim(&self, n: usize) -> usize {
        self.dim_v() * count(self.algebra_dim(), n)
    }

    /// `dim C^n_L ⊕ C^{n-1}_op`
    pub fn cone_dim(&self, n: usize) -> usize {
        self.leib_dim(n) + if n == 0 { 0 } else { self.leib_dim(n - 1) }
    }

    pub fn delta(&self, n: usize) -> Matrix {
        delta_unchecked(&self.algebra, &self.rep, n)
    }

    pub fn partial(&self, n: usize) -> Matrix {
        delta_unchecked(&self.derived, &self.induced, n)
    }

    pub fn phi(&self, n: usize) -> Matrix {
        let (m, d) = (self.dim_v(), self.algebra_dim());
        assemble(m, d, n, self.leib_dim(n), |f| apply_phi(&self.ctx, self.rep.k_v(), f))
    }

    /// `d^n(f, g) = (δ^n f, -Φ^n f - ∂^{n-1} g)`, and `d^0 f = (δ^0 f, -f)`.
    /// Rows are ordered `C^{n+1}_L` then `C^n_op`; columns `C^n_L` then
    /// `C^{n-1}_op`.
    pub fn cone(&self, n: usize) -> Matrix {
        let top = self.leib_dim(n + 1);
        let mut out = Matrix::zeros(self.cone_dim(n + 1), self.cone_dim(n));
        out.set_block(0, 0, &self.delta(n));
        out.set_block(top, 0, &self.phi(n).neg());
        if n >= 1 {
            out.set_block(top, self.leib_dim(n), &self.partial(n - 1).neg());
        }
        out
    }

    pub fn apply_delta(&self, f: &Cochain) -> Cochain {
        apply_delta(&self.algebra, &self.rep, f)
    }

    pub fn apply_partial(&self, f: &Cochain) -> Cochain {
        apply_delta(&self.derived, &self.induced, f)
    }

    pub fn apply_phi(&self, f: &Cochain) -> Cochain {
        apply_phi(&self.ctx, self.rep.k_v(), f)
    }

    /// The cone differential on a single cochain.
    pub fn apply_cone(&self, c: &ConeCochain) -> ConeCochain {
        let leib = self.apply_delta(&c.leib);
        let mut op = self.apply_phi(&c.leib).neg();
        if let Some(g) = &c.op {
            op = op.sub(&self.apply_partial(g));
        }
        ConeCochain { leib, op: Some(op) }
    }
}

#[cfg(test)]
pub(crate) mod tests;
