use super::{LeibnizAlgebra, OperatorContext};
use crate::defect::DefectReport;
use crate::linalg::{vec_add, vec_axpy, vec_scale, vec_sub, Matrix, Scalar};
use crate::{Error, Result};

/// Residuals of `[x,[y,z]] - [[x,y],z] - [y,[x,z]]` on all basis triples.
pub fn leibniz_defect(a: &LeibnizAlgebra) -> DefectReport {
    let d = a.dim();
    let mut report = DefectReport::new();
    for i in 0..d {
        for j in 0..d {
            let ij = a.bracket_basis(i, j);
            for k in 0..d {
                let mut r = vec![Scalar::zero(); d];
                // [e_i, [e_j, e_k]]
                for (m, c) in a.bracket_basis(j, k).iter().enumerate() {
                    vec_axpy(&mut r, c, a.bracket_basis(i, m));
                }
                // - [[e_i, e_j], e_k]
                for (m, c) in ij.iter().enumerate() {
                    vec_axpy(&mut r, &-c, a.bracket_basis(m, k));
                }
                // - [e_j, [e_i, e_k]]
                for (m, c) in a.bracket_basis(i, k).iter().enumerate() {
                    vec_axpy(&mut r, &-c, a.bracket_basis(j, m));
                }
                report.record_vec("leibniz", vec![i, j, k], &r);
            }
        }
    }
    report
}

fn mrb_residual(a: &LeibnizAlgebra, ctx: &OperatorContext, i: usize, j: usize) -> Vec<Scalar> {
    let d = a.dim();
    let ki = ctx.image(i);
    let kj = ctx.image(j);
    let lhs = a.bracket(&ki, &kj);
    let ei = crate::linalg::basis_vector(d, i);
    let ej = crate::linalg::basis_vector(d, j);
    let inner = vec_add(&a.bracket(&ki, &ej), &a.bracket(&ei, &kj));
    let rhs = vec_add(&ctx.apply(&inner), &vec_scale(a.bracket_basis(i, j), &ctx.weight));
    vec_sub(&lhs, &rhs)
}

/// Residuals of `[Kx,Ky] - K([Kx,y] + [x,Ky]) - λ[x,y]` on all basis pairs.
pub fn mrb_defect(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<DefectReport> {
    ctx.check_against(a)?;
    let mut report = DefectReport::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            report.record_vec("modified-rota-baxter", vec![i, j], &mrb_residual(a, ctx, i, j));
        }
    }
    Ok(report)
}

/// Short-circuiting form of [`mrb_defect`]; assumes matching dimensions.
pub fn is_mrb(a: &LeibnizAlgebra, ctx: &OperatorContext) -> bool {
    (0..a.dim()).all(|i| (0..a.dim()).all(|j| mrb_residual(a, ctx, i, j).iter().all(Scalar::is_zero)))
}

/// Residuals of `[Tx,Ty] - T([Tx,y] + [x,Ty] + λ[x,y])` on all basis pairs.
pub fn rb_defect(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<DefectReport> {
    ctx.check_against(a)?;
    let d = a.dim();
    let mut report = DefectReport::new();
    for i in 0..d {
        for j in 0..d {
            let ti = ctx.image(i);
            let tj = ctx.image(j);
            let lhs = a.bracket(&ti, &tj);
            let ei = crate::linalg::basis_vector(d, i);
            let ej = crate::linalg::basis_vector(d, j);
            let mut inner = vec_add(&a.bracket(&ti, &ej), &a.bracket(&ei, &tj));
            vec_axpy(&mut inner, &ctx.weight, a.bracket_basis(i, j));
            let r = vec_sub(&lhs, &ctx.apply(&inner));
            report.record_vec("rota-baxter", vec![i, j], &r);
        }
    }
    Ok(report)
}

pub fn require_leibniz(a: &LeibnizAlgebra) -> Result<()> {
    let report = leibniz_defect(a);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::NotLeibniz(report))
    }
}

pub fn require_mrb(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<()> {
    let report = mrb_defect(a, ctx)?;
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::NotModifiedRotaBaxter(report))
    }
}

/// A Rota-Baxter operator `T` of weight `λ` gives the modified operator
/// `2T + λ·id` of weight `-λ²`.
pub fn rb_to_mrb(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<OperatorContext> {
    let report = rb_defect(a, ctx)?;
    if !report.is_empty() {
        return Err(Error::NotRotaBaxter(report));
    }
    let d = a.dim();
    let operator = ctx
        .operator
        .scale(&Scalar::from_int(2))
        .add(&Matrix::scalar_identity(d, &ctx.weight));
    let weight = -(&ctx.weight * &ctx.weight);
    let out = OperatorContext::new(operator, weight);
    if !is_mrb(a, &out) {
        return Err(Error::Postcondition("rb_to_mrb output fails the modified identity"));
    }
    Ok(out)
}

/// The derived bracket `[x, y]_K = [Kx, y] + [x, Ky]`.
///
/// The result is again a Leibniz algebra carrying `K` as a modified
/// Rota-Baxter operator of the same weight; both facts are checked.
pub fn derived_algebra(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Result<LeibnizAlgebra> {
    require_mrb(a, ctx)?;
    require_leibniz(a)?;
    let out = derived_unchecked(a, ctx);
    if !leibniz_defect(&out).is_empty() {
        return Err(Error::Postcondition("derived bracket is not Leibniz"));
    }
    if !is_mrb(&out, ctx) {
        return Err(Error::Postcondition(
            "operator is not modified Rota-Baxter on the derived algebra",
        ));
    }
    Ok(out)
}

pub(crate) fn derived_unchecked(a: &LeibnizAlgebra, ctx: &OperatorContext) -> LeibnizAlgebra {
    let d = a.dim();
    LeibnizAlgebra::from_table(d, |i, j| {
        let ei = crate::linalg::basis_vector(d, i);
        let ej = crate::linalg::basis_vector(d, j);
        vec_add(&a.bracket(&ctx.image(i), &ej), &a.bracket(&ei, &ctx.image(j)))
    })
}

/// Residuals of `φ[x,y] - [φx,φy]'` on basis pairs (section `bracket`) and of
/// `φK - K'φ` on basis vectors (section `operator`).
pub fn morphism_defect(
    a1: &LeibnizAlgebra,
    ctx1: &OperatorContext,
    a2: &LeibnizAlgebra,
    ctx2: &OperatorContext,
    phi: &Matrix,
) -> Result<DefectReport> {
    ctx1.check_against(a1)?;
    ctx2.check_against(a2)?;
    if phi.shape() != (a2.dim(), a1.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "morphism is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            a2.dim(),
            a1.dim()
        )));
    }
    let mut report = DefectReport::new();
    for i in 0..a1.dim() {
        for j in 0..a1.dim() {
            let lhs = phi.mul_vec(a1.bracket_basis(i, j));
            let rhs = a2.bracket(&phi.column(i), &phi.column(j));
            report.record_vec("bracket", vec![i, j], &vec_sub(&lhs, &rhs));
        }
    }
    let op = phi.mul(&ctx1.operator).sub(&ctx2.operator.mul(phi));
    for i in 0..a1.dim() {
        report.record_vec("operator", vec![i], &op.column(i));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn ctx(rows: &[&[i64]], w: i64) -> OperatorContext {
        OperatorContext::new(Matrix::from_int_rows(rows), s(w))
    }

    #[test]
    fn leibniz_examples() {
        assert!(leibniz_defect(&g3()).is_empty());
        assert!(leibniz_defect(&lie2()).is_empty());
        let a = LeibnizAlgebra::new(1, [(0, 0, 0, s(1))]).unwrap();
        let r = leibniz_defect(&a);
        assert_eq!(r.len(), 1);
        assert_eq!(r.entries()[0].args, vec![0, 0, 0]);
        assert_eq!(r.entries()[0].residual, Matrix::from_int_rows(&[&[-1]]));
    }

    #[test]
    fn mrb_examples() {
        assert!(mrb_defect(&g3(), &k0()).unwrap().is_empty());
        let id = OperatorContext::new(Matrix::identity(3), s(-1));
        assert!(mrb_defect(&g3(), &id).unwrap().is_empty());
        let id2 = OperatorContext::new(Matrix::identity(2), s(-1));
        assert!(mrb_defect(&lie2(), &id2).unwrap().is_empty());

        let weight0 = OperatorContext::new(k0().operator, s(0));
        let r = mrb_defect(&g3(), &weight0).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.entries()[0].args, vec![0, 0]);
        assert_eq!(r.entries()[0].residual, Matrix::from_int_rows(&[&[0], &[0], &[1]]));

        assert!(matches!(
            mrb_defect(&g3(), &OperatorContext::new(Matrix::identity(2), s(0))),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rb_examples() {
        assert!(rb_defect(&g3(), &ctx(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]], 5))
            .unwrap()
            .is_empty());
        // T = id, λ = -2: [x,y] - ([x,y] + [x,y] - 2[x,y]) = [x,y]; fails exactly at (1,1).
        let r = rb_defect(&g3(), &OperatorContext::new(Matrix::identity(3), s(-2))).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.entries()[0].args, vec![0, 0]);
        assert_eq!(r.entries()[0].residual, Matrix::from_int_rows(&[&[0], &[0], &[1]]));
    }

    #[test]
    fn rb_defect_matches_direct_evaluation_on_lie2() {
        // T = E11, λ = 0 on [e1,e2] = e2.
        let t = ctx(&[&[1, 0], &[0, 0]], 0);
        let r = rb_defect(&lie2(), &t).unwrap();
        // (1,2): [e1, 0] - T([e1,e2] + [e1,0]) = -T e2 = 0.
        // (2,1): [0, e1] - T([0,e1] + [e2,e1]) = -T(-e2) = 0.
        // All residuals vanish since T kills e2 and [e1,e1] = 0.
        assert!(r.is_empty());
        let t = ctx(&[&[0, 0], &[0, 1]], 0);
        let r = rb_defect(&lie2(), &t).unwrap();
        // T = E22: (1,2): [0, e2] - T([0,e2] + [e1,e2]) = -e2.
        // (2,1): [e2, 0] - T([e2,e1] + [e2,0]) = e2.
        let args: Vec<_> = r.entries().iter().map(|d| d.args.clone()).collect();
        assert_eq!(args, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(r.entries()[0].residual, Matrix::from_int_rows(&[&[0], &[-1]]));
        assert_eq!(r.entries()[1].residual, Matrix::from_int_rows(&[&[0], &[1]]));
    }

    #[test]
    fn rb_to_mrb_examples() {
        let zero = |w| ctx(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]], w);
        let out = rb_to_mrb(&g3(), &zero(2)).unwrap();
        assert_eq!(out.operator, Matrix::scalar_identity(3, &s(2)));
        assert_eq!(out.weight, s(-4));
        let out = rb_to_mrb(&g3(), &zero(0)).unwrap();
        assert!(out.operator.is_zero());
        assert_eq!(out.weight, s(0));
        assert!(matches!(
            rb_to_mrb(&g3(), &OperatorContext::new(Matrix::identity(3), s(-2))),
            Err(Error::NotRotaBaxter(_))
        ));
    }

    #[test]
    fn derived_examples() {
        let d = derived_algebra(&g3(), &k0()).unwrap();
        assert_eq!(d, LeibnizAlgebra::new(3, [(0, 0, 2, s(2))]).unwrap());
        let d = derived_algebra(&lie2(), &OperatorContext::new(Matrix::identity(2), s(-1))).unwrap();
        assert_eq!(d, LeibnizAlgebra::new(2, [(0, 1, 1, s(2)), (1, 0, 1, s(-2))]).unwrap());
        let d = derived_algebra(&g3(), &OperatorContext::new(Matrix::zeros(3, 3), s(0))).unwrap();
        assert!(d.is_abelian());
        let bad = OperatorContext::new(k0().operator, s(0));
        assert!(matches!(
            derived_algebra(&g3(), &bad),
            Err(Error::NotModifiedRotaBaxter(_))
        ));
    }

    #[test]
    fn morphism_examples() {
        let (a, k) = (g3(), k0());
        assert!(morphism_defect(&a, &k, &a, &k, &Matrix::identity(3))
            .unwrap()
            .is_empty());
        let other = OperatorContext::new(Matrix::identity(2), s(-1));
        assert!(morphism_defect(&a, &k, &lie2(), &other, &Matrix::zeros(2, 3))
            .unwrap()
            .is_empty());
        let phi = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let r = morphism_defect(&a, &k, &a, &k, &phi).unwrap();
        assert_eq!(r.len(), 1);
        let e = &r.entries()[0];
        assert_eq!((e.section, e.args.clone()), ("bracket", vec![0, 0]));
        assert_eq!(e.residual, Matrix::from_int_rows(&[&[0], &[0], &[-1]]));
    }
}
