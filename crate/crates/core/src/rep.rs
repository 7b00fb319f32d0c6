//! Representations of Leibniz and modified Rota-Baxter Leibniz algebras.
//!
//! Two operator compatibilities live here and must not be confused: the
//! modified one keeps the weight term outside `K_V`, the plain Rota-Baxter one
//! puts it inside `T_V`.

use crate::algebra::{derived_unchecked, leibniz_defect, mrb_defect, require_leibniz, require_mrb};
use crate::defect::DefectReport;
use crate::linalg::{Matrix, Scalar};
use crate::{Error, LeibnizAlgebra, OperatorContext, Result};

/// `(V, ρ^L, ρ^R, K_V)` with one `ρ` matrix per algebra basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dim_v: usize,
    rho_l: Vec<Matrix>,
    rho_r: Vec<Matrix>,
    k_v: Matrix,
}

impl Representation {
    pub fn new(dim_v: usize, rho_l: Vec<Matrix>, rho_r: Vec<Matrix>, k_v: Matrix) -> Result<Self> {
        if rho_l.len() != rho_r.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} left and {} right action matrices",
                rho_l.len(),
                rho_r.len()
            )));
        }
        let square = |m: &Matrix| m.shape() == (dim_v, dim_v);
        if !rho_l.iter().chain(&rho_r).all(square) || !square(&k_v) {
            return Err(Error::DimensionMismatch(format!(
                "representation matrices must be {dim_v}x{dim_v}"
            )));
        }
        Ok(Representation {
            dim_v,
            rho_l,
            rho_r,
            k_v,
        })
    }

    /// Zero actions of a `d`-dimensional algebra on `V` with the given operator.
    pub fn trivial(d: usize, k_v: Matrix) -> Result<Self> {
        let m = k_v.rows();
        Representation::new(m, vec![Matrix::zeros(m, m); d], vec![Matrix::zeros(m, m); d], k_v)
    }

    /// Left and right multiplications on the algebra itself, with `K_V = k_v`.
    pub fn regular(a: &LeibnizAlgebra, k_v: Matrix) -> Result<Self> {
        let d = a.dim();
        Representation::new(
            d,
            (0..d).map(|i| a.left_mult(i)).collect(),
            (0..d).map(|i| a.right_mult(i)).collect(),
            k_v,
        )
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn algebra_dim(&self) -> usize {
        self.rho_l.len()
    }

    pub fn rho_l(&self) -> &[Matrix] {
        &self.rho_l
    }

    pub fn rho_r(&self) -> &[Matrix] {
        &self.rho_r
    }

    pub fn k_v(&self) -> &Matrix {
        &self.k_v
    }

    pub fn with_operator(&self, k_v: Matrix) -> Result<Self> {
        Representation::new(self.dim_v, self.rho_l.clone(), self.rho_r.clone(), k_v)
    }

    /// `ρ^L(x)` for a coordinate vector `x`.
    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.rho_l, x, self.dim_v)
    }

    /// `ρ^R(x)` for a coordinate vector `x`.
    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.rho_r, x, self.dim_v)
    }

    pub(crate) fn check_against(&self, a: &LeibnizAlgebra) -> Result<()> {
        if self.algebra_dim() != a.dim() {
            return Err(Error::DimensionMismatch(format!(
                "representation has {} action matrices on an algebra of dimension {}",
                self.algebra_dim(),
                a.dim()
            )));
        }
        Ok(())
    }
}

fn combine(mats: &[Matrix], x: &[Scalar], m: usize) -> Matrix {
    assert_eq!(mats.len(), x.len(), "vector length");
    let mut out = Matrix::zeros(m, m);
    for (mat, c) in mats.iter().zip(x) {
        out.add_scaled(c, mat);
    }
    out
}

/// Residual matrices of the three representation axioms on all basis pairs
/// `(x, y) = (e_i, e_j)`:
///
/// * `left`: `ρ^L([x,y]) - [ρ^L(x), ρ^L(y)]`
/// * `right-left`: `ρ^R([x,y]) - ρ^L(x)ρ^R(y) + ρ^R(y)ρ^L(x)`
/// * `right-right`: `ρ^R([x,y]) - ρ^L(x)ρ^R(y) - ρ^R(y)ρ^R(x)`
///
/// plus the section `right-annihilates`: `ρ^R(y)(ρ^L(x) + ρ^R(x))`, which
/// vanishes whenever the last two axioms both hold.
pub fn rep_defect(a: &LeibnizAlgebra, r: &Representation) -> Result<DefectReport> {
    r.check_against(a)?;
    let d = a.dim();
    let mut report = DefectReport::new();
    for i in 0..d {
        for j in 0..d {
            let xy = a.bracket_basis(i, j);
            let (lx, ly) = (&r.rho_l[i], &r.rho_l[j]);
            let (rx, ry) = (&r.rho_r[i], &r.rho_r[j]);
            let l_xy = r.left_of(xy);
            let r_xy = r.right_of(xy);
            let lx_ry = lx.mul(ry);

            let left = l_xy.sub(&lx.mul(ly)).add(&ly.mul(lx));
            report.record("left", vec![i, j], left);
            let right_left = r_xy.sub(&lx_ry).add(&ry.mul(lx));
            report.record("right-left", vec![i, j], right_left);
            let right_right = r_xy.sub(&lx_ry).sub(&ry.mul(rx));
            report.record("right-right", vec![i, j], right_right);
            report.record("right-annihilates", vec![i, j], ry.mul(&lx.add(rx)));
        }
    }
    Ok(report)
}

fn operator_residuals(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    weight_inside: bool,
) -> Result<DefectReport> {
    ctx.check_against(a)?;
    r.check_against(a)?;
    let kv = &r.k_v;
    let mut report = DefectReport::new();
    for i in 0..a.dim() {
        let kx = ctx.image(i);
        for (section, rho, rho_kx) in [
            ("left-operator", &r.rho_l[i], r.left_of(&kx)),
            ("right-operator", &r.rho_r[i], r.right_of(&kx)),
        ] {
            let lhs = rho_kx.mul(kv);
            let weighted = rho.scale(&ctx.weight);
            let mut inner = rho_kx.add(&rho.mul(kv));
            let residual = if weight_inside {
                inner = inner.add(&weighted);
                lhs.sub(&kv.mul(&inner))
            } else {
                lhs.sub(&kv.mul(&inner)).sub(&weighted)
            };
            report.record(section, vec![i], residual);
        }
    }
    Ok(report)
}

/// Residuals of `ρ(Kx)K_V - K_V(ρ(Kx) + ρ(x)K_V) - λρ(x)` for `ρ = ρ^L, ρ^R`
/// on each basis vector `x`.
pub fn mrb_rep_defect(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation) -> Result<DefectReport> {
    operator_residuals(a, ctx, r, false)
}

/// Residuals of `ρ(Tx)T_V - T_V(ρ(Tx) + ρ(x)T_V + λρ(x))` with `T_V` read
/// from the representation's operator slot.
pub fn rb_rep_defect(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation) -> Result<DefectReport> {
    operator_residuals(a, ctx, r, true)
}

/// The algebra acting on itself, with `K_V = K`.
pub fn regular_rep(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<Representation> {
    ctx.check_against(a)?;
    Representation::regular(a, ctx.operator.clone())
}

pub fn require_rep(a: &LeibnizAlgebra, r: &Representation) -> Result<()> {
    let report = rep_defect(a, r)?;
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::NotRepresentation(report))
    }
}

pub fn require_mrb_rep(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation) -> Result<()> {
    let report = mrb_rep_defect(a, ctx, r)?;
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::NotMRBRepresentation(report))
    }
}

/// Sends a Rota-Baxter representation `(ρ, T_V)` of weight `λ` to
/// `(ρ, 2T_V + λ·id)`, a modified representation of weight `-λ²` over
/// `2T + λ·id`.
pub fn rb_rep_to_mrb_rep(a: &LeibnizAlgebra, rb_ctx: &OperatorContext, r: &Representation) -> Result<Representation> {
    let report = rb_rep_defect(a, rb_ctx, r)?;
    if !report.is_empty() {
        return Err(Error::NotRBRepresentation(report));
    }
    let mrb_ctx = crate::algebra::rb_to_mrb(a, rb_ctx)?;
    let m = r.dim_v;
    let k_v = r
        .k_v
        .scale(&Scalar::from_int(2))
        .add(&Matrix::scalar_identity(m, &rb_ctx.weight));
    let out = r.with_operator(k_v)?;
    if !mrb_rep_defect(a, &mrb_ctx, &out)?.is_empty() {
        return Err(Error::Postcondition(
            "transformed representation fails the modified compatibility",
        ));
    }
    Ok(out)
}

/// `ρ_K(x) = ρ(Kx) - K_V ∘ ρ(x)` on both sides, keeping `K_V`.
///
/// This is a representation of the derived algebra, and a modified
/// representation of `(g_K, K)` of the same weight; both are checked.
pub fn induced_rep(a: &LeibnizAlgebra, ctx: &OperatorContext, r: &Representation) -> Result<Representation> {
    require_mrb(a, ctx)?;
    require_leibniz(a)?;
    require_rep(a, r)?;
    require_mrb_rep(a, ctx, r)?;
    let out = induced_unchecked(ctx, r);
    let derived = derived_unchecked(a, ctx);
    if !rep_defect(&derived, &out)?.is_empty() {
        return Err(Error::Postcondition(
            "induced maps are not a representation of the derived algebra",
        ));
    }
    if !mrb_rep_defect(&derived, ctx, &out)?.is_empty() {
        return Err(Error::Postcondition(
            "induced representation fails the modified compatibility",
        ));
    }
    Ok(out)
}

pub(crate) fn induced_unchecked(ctx: &OperatorContext, r: &Representation) -> Representation {
    let d = r.algebra_dim();
    let kv = &r.k_v;
    let side = |mats: &[Matrix]| -> Vec<Matrix> {
        (0..d)
            .map(|i| combine(mats, &ctx.image(i), r.dim_v).sub(&kv.mul(&mats[i])))
            .collect()
    };
    Representation {
        dim_v: r.dim_v,
        rho_l: side(&r.rho_l),
        rho_r: side(&r.rho_r),
        k_v: kv.clone(),
    }
}

/// The semidirect product on `g ⊕ V` (algebra basis first, then `V`):
/// `[x+u, y+v] = [x,y] + ρ^L(x)v + ρ^R(y)u`, with operator `K ⊕ K_V`.
pub fn semidirect(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
) -> Result<(LeibnizAlgebra, OperatorContext)> {
    require_leibniz(a)?;
    require_mrb(a, ctx)?;
    require_rep(a, r)?;
    require_mrb_rep(a, ctx, r)?;
    let (total, op) = direct_sum_model(a, ctx, r, None, None);
    if !leibniz_defect(&total).is_empty() {
        return Err(Error::Postcondition("semidirect bracket is not Leibniz"));
    }
    if !mrb_defect(&total, &op)?.is_empty() {
        return Err(Error::Postcondition("semidirect operator is not modified Rota-Baxter"));
    }
    Ok((total, op))
}

/// `g ⊕ V` with bracket `[x,y] + ρ^L(x)v + ρ^R(y)u + ψ(x,y)` and operator
/// `K(x) + χ(x) + K_V(u)`. `psi` is `m x d^2`, `chi` is `m x d`.
pub(crate) fn direct_sum_model(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    psi: Option<&Matrix>,
    chi: Option<&Matrix>,
) -> (LeibnizAlgebra, OperatorContext) {
    let d = a.dim();
    let m = r.dim_v;
    let total = LeibnizAlgebra::from_table(d + m, |p, q| {
        let mut v = vec![Scalar::zero(); d + m];
        match (p < d, q < d) {
            (true, true) => {
                v[..d].clone_from_slice(a.bracket_basis(p, q));
                if let Some(psi) = psi {
                    for b in 0..m {
                        v[d + b] = psi[(b, p * d + q)].clone();
                    }
                }
            }
            (true, false) => {
                for b in 0..m {
                    v[d + b] = r.rho_l[p][(b, q - d)].clone();
                }
            }
            (false, true) => {
                for b in 0..m {
                    v[d + b] = r.rho_r[q][(b, p - d)].clone();
                }
            }
            (false, false) => {}
        }
        v
    });
    let mut op = Matrix::zeros(d + m, d + m);
    op.set_block(0, 0, &ctx.operator);
    op.set_block(d, d, &r.k_v);
    if let Some(chi) = chi {
        op.set_block(d, 0, chi);
    }
    (total, OperatorContext::new(op, ctx.weight.clone()))
}
