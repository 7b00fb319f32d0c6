//! One-parameter formal deformations `μ_t = Σ μ_i t^i`, `K_t = Σ K_i t^i`
//! of a modified Rota-Baxter Leibniz algebra, truncated at `t^{N+1}`.
//!
//! Brackets are `d x d^2` matrices (column `i*d + j` holds `μ(e_i, e_j)`),
//! so `μ(Ax, By)` is `μ · (A ⊗ B)`.

use crate::algebra::{LeibnizAlgebra, OperatorContext};
use crate::cohomology::{Cochain, ConeCochain, MrbComplex};
use crate::defect::DefectReport;
use crate::linalg::{Matrix, Scalar};
use crate::rep::Representation;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    algebra: LeibnizAlgebra,
    ctx: OperatorContext,
    mu: Vec<Matrix>,
    kk: Vec<Matrix>,
}

impl TruncatedDeformation {
    /// The base data plus the terms of orders `1..=N`; both lists must have
    /// length `N`.
    pub fn new(a: &LeibnizAlgebra, ctx: &OperatorContext, mu: Vec<Matrix>, kk: Vec<Matrix>) -> Result<Self> {
        ctx.check_against(a)?;
        if mu.len() != kk.len() {
            return Err(Error::OrderMismatch(mu.len(), kk.len()));
        }
        let d = a.dim();
        if mu.iter().any(|m| m.shape() != (d, d * d)) || kk.iter().any(|k| k.shape() != (d, d)) {
            return Err(Error::DimensionMismatch(format!(
                "deformation terms must be {d}x{} brackets and {d}x{d} operators",
                d * d
            )));
        }
        let mut all_mu = vec![a.bracket_cochain()];
        all_mu.extend(mu);
        let mut all_k = vec![ctx.operator.clone()];
        all_k.extend(kk);
        Ok(TruncatedDeformation {
            algebra: a.clone(),
            ctx: ctx.clone(),
            mu: all_mu,
            kk: all_k,
        })
    }

    /// `μ_t = μ`, `K_t = K` through order `order`.
    pub fn trivial(a: &LeibnizAlgebra, ctx: &OperatorContext, order: usize) -> Result<Self> {
        let d = a.dim();
        Self::new(
            a,
            ctx,
            vec![Matrix::zeros(d, d * d); order],
            vec![Matrix::zeros(d, d); order],
        )
    }

    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn ctx(&self) -> &OperatorContext {
        &self.ctx
    }

    pub fn weight(&self) -> &Scalar {
        &self.ctx.weight
    }

    /// `μ_i`, with `μ_0` the base bracket.
    pub fn mu(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    /// `K_i`, with `K_0` the base operator.
    pub fn k(&self, i: usize) -> &Matrix {
        &self.kk[i]
    }

    pub fn mus(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn ks(&self) -> &[Matrix] {
        &self.kk
    }

    fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// `ψ_t = Σ ψ_i t^i` with `ψ_0 = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalIso {
    psi: Vec<Matrix>,
}

impl FormalIso {
    /// All terms `ψ_0..ψ_N`; `ψ_0` must be the identity.
    pub fn new(psi: Vec<Matrix>) -> Result<Self> {
        let d = psi.first().map(Matrix::rows).ok_or(Error::NotUnipotent)?;
        if !psi[0].is_identity() {
            return Err(Error::NotUnipotent);
        }
        if psi.iter().any(|p| p.shape() != (d, d)) {
            return Err(Error::DimensionMismatch(format!(
                "formal isomorphism terms must be {d}x{d}"
            )));
        }
        Ok(FormalIso { psi })
    }

    /// `I + Σ_{i>=1} ψ_i t^i` from the terms of orders `1..=N`.
    pub fn from_higher(d: usize, higher: Vec<Matrix>) -> Result<Self> {
        let mut psi = vec![Matrix::identity(d)];
        psi.extend(higher);
        Self::new(psi)
    }

    pub fn identity(d: usize, order: usize) -> Self {
        let mut psi = vec![Matrix::identity(d)];
        psi.extend(std::iter::repeat_with(|| Matrix::zeros(d, d)).take(order));
        FormalIso { psi }
    }

    pub fn order(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn terms(&self) -> &[Matrix] {
        &self.psi
    }

    /// The inverse series: `inv_0 = I`, `inv_n = -Σ_{i=1..n} ψ_i inv_{n-i}`.
    pub fn inverse(&self) -> FormalIso {
        FormalIso {
            psi: series_inverse(&self.psi),
        }
    }
}

fn series_inverse(psi: &[Matrix]) -> Vec<Matrix> {
    let d = psi[0].rows();
    let mut inv = vec![Matrix::identity(d)];
    for n in 1..psi.len() {
        let mut acc = Matrix::zeros(d, d);
        for i in 1..=n {
            acc = acc.sub(&psi[i].mul(&inv[n - i]));
        }
        inv.push(acc);
    }
    inv
}

/// Truncated product `c_n = Σ_{i+j=n} f(a_i, b_j)`.
fn series_with(a: &[Matrix], b: &[Matrix], f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Vec<Matrix> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let mut acc = f(&a[0], &b[n]);
            for i in 1..=n {
                acc = acc.add(&f(&a[i], &b[n - i]));
            }
            acc
        })
        .collect()
}

fn series_mul(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    series_with(a, b, Matrix::mul)
}

fn series_kron(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    series_with(a, b, Matrix::kron)
}

/// Order-`n` residuals of the deformation equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderResiduals {
    pub order: usize,
    /// Section `leibniz`, args `[i, j, k]`:
    /// `Σ_{p+q=n} μ_p(x, μ_q(y,z)) - μ_p(μ_q(x,y), z) - μ_p(y, μ_q(x,z))`.
    pub bracket: DefectReport,
    /// Section `modified-rota-baxter`, args `[i, j]`:
    /// `Σ μ_i(K_j x, K_k y) - Σ K_i(μ_j(K_k x, y) + μ_j(x, K_k y)) - λ μ_n(x,y)`
    /// with `i + j + k = n`.
    pub operator: DefectReport,
}

impl OrderResiduals {
    pub fn is_empty(&self) -> bool {
        self.bracket.is_empty() && self.operator.is_empty()
    }
}

/// The `t^n` coefficients of both deformation equations for `n = 0..=N`.
///
/// The weight term enters once per order: at order `n` it is `λ μ_n`.
pub fn deformation_residuals(def: &TruncatedDeformation) -> Vec<OrderResiduals> {
    (0..=def.order()).map(|n| order_residuals(def, n)).collect()
}

/// True when the residuals of orders `0..=through` all vanish.
pub fn is_deformation_through(def: &TruncatedDeformation, through: usize) -> bool {
    (0..=through.min(def.order())).all(|n| order_residuals(def, n).is_empty())
}

fn order_residuals(def: &TruncatedDeformation, n: usize) -> OrderResiduals {
    let d = def.dim();
    let id = Matrix::identity(d);
    let mu = &def.mu;
    let kk = &def.kk;

    let mut nested = Matrix::zeros(d, d * d * d);
    let mut left = Matrix::zeros(d, d * d * d);
    for p in 0..=n {
        let q = n - p;
        nested = nested.add(&mu[p].mul(&id.kron(&mu[q])));
        left = left.add(&mu[p].mul(&mu[q].kron(&id)));
    }
    let mut bracket = DefectReport::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let ijk = (i * d + j) * d + k;
                let jik = (j * d + i) * d + k;
                let r: Vec<Scalar> = (0..d)
                    .map(|a| &(&nested[(a, ijk)] - &left[(a, ijk)]) - &nested[(a, jik)])
                    .collect();
                bracket.record_vec("leibniz", vec![i, j, k], &r);
            }
        }
    }

    let mut op = mu[n].scale(&-def.weight().clone());
    for i in 0..=n {
        for j in 0..=n - i {
            let k = n - i - j;
            op = op.add(&mu[i].mul(&kk[j].kron(&kk[k])));
            let inner = mu[j].mul(&kk[k].kron(&id).add(&id.kron(&kk[k])));
            op = op.sub(&kk[i].mul(&inner));
        }
    }
    let mut operator = DefectReport::new();
    for i in 0..d {
        for j in 0..d {
            operator.record_vec("modified-rota-baxter", vec![i, j], &op.column(i * d + j));
        }
    }
    OrderResiduals {
        order: n,
        bracket,
        operator,
    }
}

fn regular_complex(def: &TruncatedDeformation) -> Result<MrbComplex> {
    let r = Representation::regular(&def.algebra, def.ctx.operator.clone())?;
    MrbComplex::new(&def.algebra, &def.ctx, &r)
}

/// `(μ_1, K_1)` as a degree-2 cochain of the cone complex with coefficients
/// in the regular representation. It is checked to be a cocycle.
pub fn infinitesimal(def: &TruncatedDeformation) -> Result<ConeCochain> {
    if def.order() < 1 {
        return Err(Error::NotADeformation { order: 1 });
    }
    for n in 0..=1 {
        if !order_residuals(def, n).is_empty() {
            return Err(Error::NotADeformation { order: n });
        }
    }
    let d = def.dim();
    let c = ConeCochain::pair(
        Cochain::new(d, 2, def.mu[1].clone())?,
        Cochain::from_linear_map(&def.kk[1]),
    )?;
    if !regular_complex(def)?.apply_cone(&c).is_zero() {
        return Err(Error::Postcondition("infinitesimal of a deformation is not a cocycle"));
    }
    Ok(c)
}

/// The deformation `μ'_t = ψ_t^{-1} μ_t (ψ_t ⊗ ψ_t)`,
/// `K'_t = ψ_t^{-1} K_t ψ_t`, so that `ψ_t` maps it to `def`.
pub fn apply_formal_iso(def: &TruncatedDeformation, iso: &FormalIso) -> Result<TruncatedDeformation> {
    if iso.order() != def.order() {
        return Err(Error::OrderMismatch(def.order(), iso.order()));
    }
    if iso.psi[0].rows() != def.dim() {
        return Err(Error::DimensionMismatch(
            "formal isomorphism on a different space".into(),
        ));
    }
    let inv = series_inverse(&iso.psi);
    let mu = series_mul(&series_mul(&inv, &def.mu), &series_kron(&iso.psi, &iso.psi));
    let kk = series_mul(&series_mul(&inv, &def.kk), &iso.psi);
    let out = TruncatedDeformation {
        algebra: def.algebra.clone(),
        ctx: def.ctx.clone(),
        mu,
        kk,
    };
    if is_deformation_through(def, def.order()) && !is_deformation_through(&out, out.order()) {
        return Err(Error::Postcondition(
            "formal isomorphism broke the deformation equations",
        ));
    }
    Ok(out)
}

/// Order-by-order residuals of `ψ_t μ2_t = μ1_t (ψ_t ⊗ ψ_t)` (section
/// `bracket`, args `[i, j]`) and `ψ_t K2_t = K1_t ψ_t` (section `operator`,
/// args `[i]`). All empty exactly when `iso` maps `d2` to `d1` modulo
/// `t^{N+1}`.
pub fn equivalence_residuals(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    iso: &FormalIso,
) -> Result<Vec<DefectReport>> {
    if d1.order() != d2.order() {
        return Err(Error::OrderMismatch(d1.order(), d2.order()));
    }
    if iso.order() != d1.order() {
        return Err(Error::OrderMismatch(d1.order(), iso.order()));
    }
    if d1.dim() != d2.dim() || iso.psi[0].rows() != d1.dim() {
        return Err(Error::DimensionMismatch("deformations on different spaces".into()));
    }
    let d = d1.dim();
    let bracket = series_mul(&iso.psi, &d2.mu)
        .into_iter()
        .zip(series_mul(&d1.mu, &series_kron(&iso.psi, &iso.psi)))
        .map(|(l, r)| l.sub(&r));
    let operator = series_mul(&iso.psi, &d2.kk)
        .into_iter()
        .zip(series_mul(&d1.kk, &iso.psi))
        .map(|(l, r)| l.sub(&r));
    Ok(bracket
        .zip(operator)
        .map(|(b, o)| {
            let mut report = DefectReport::new();
            for i in 0..d {
                for j in 0..d {
                    report.record_vec("bracket", vec![i, j], &b.column(i * d + j));
                }
            }
            for i in 0..d {
                report.record_vec("operator", vec![i], &o.column(i));
            }
            report
        })
        .collect())
}

/// One step of the trivialization argument. Given `(ψ_1', x)` with
/// `d^1(ψ_1', x) = (μ_1, K_1)`, sets `ψ_1 = ψ_1' + δ^0 x` and applies
/// `ψ_t = I - ψ_1 t`. The result has `μ'_1 = 0` and `K'_1 = 0`.
pub fn gauge_step(def: &TruncatedDeformation, psi1_prime: &Matrix, x: &[Scalar]) -> Result<TruncatedDeformation> {
    let d = def.dim();
    if psi1_prime.shape() != (d, d) || x.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "trivializer must be a {d}x{d} map and a {d}-vector"
        )));
    }
    let target = infinitesimal(def)?;
    let cx = regular_complex(def)?;
    let witness = ConeCochain::pair(Cochain::from_linear_map(psi1_prime), Cochain::from_vector_value(d, x))?;
    if cx.apply_cone(&witness) != target {
        return Err(Error::NotACoboundaryWitness);
    }
    let shift = cx.apply_delta(&Cochain::from_vector_value(d, x));
    let psi1 = psi1_prime.add(shift.values());
    let mut higher = vec![psi1.neg()];
    higher.extend(std::iter::repeat_with(|| Matrix::zeros(d, d)).take(def.order() - 1));
    let out = apply_formal_iso(def, &FormalIso::from_higher(d, higher)?)?;
    if !out.mu[1].is_zero() || !out.kk[1].is_zero() {
        return Err(Error::Postcondition("gauge step left a first-order term"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::{leibniz_defect, mrb_defect};
    use crate::cohomology::tests::sl2;
    use crate::linalg::kernel_basis;

    fn e(d: usize, r: usize, c: usize) -> Matrix {
        Matrix::unit(d, d, r, c)
    }

    fn gauged(def: &TruncatedDeformation, psi1: &Matrix) -> TruncatedDeformation {
        let d = def.dim();
        let mut higher = vec![psi1.clone()];
        higher.extend(std::iter::repeat_with(|| Matrix::zeros(d, d)).take(def.order() - 1));
        apply_formal_iso(def, &FormalIso::from_higher(d, higher).unwrap()).unwrap()
    }

    #[test]
    fn trivial_deformation_has_no_residuals() {
        for order in 0..4 {
            let def = TruncatedDeformation::trivial(&g3(), &k0(), order).unwrap();
            assert!(deformation_residuals(&def).iter().all(OrderResiduals::is_empty));
        }
    }

    #[test]
    fn order_zero_matches_base_checks() {
        let a = LeibnizAlgebra::new(2, [(0, 0, 0, s(1)), (0, 1, 1, s(2))]).unwrap();
        let ctx = OperatorContext::new(Matrix::from_int_rows(&[&[1, 2], &[3, 4]]), s(5));
        let def = TruncatedDeformation::trivial(&a, &ctx, 1).unwrap();
        let res = &deformation_residuals(&def)[0];
        assert!(!res.bracket.is_empty() && !res.operator.is_empty());
        assert_eq!(res.bracket, leibniz_defect(&a));
        assert_eq!(res.operator, mrb_defect(&a, &ctx).unwrap());
    }

    #[test]
    fn non_cocycle_has_first_order_residual() {
        let (a, ctx) = (g3(), k0());
        // μ_1(e3, e1) = e1
        let mu1 = Matrix::unit(3, 9, 0, 6);
        let def = TruncatedDeformation::new(&a, &ctx, vec![mu1.clone()], vec![Matrix::zeros(3, 3)]).unwrap();
        let res = deformation_residuals(&def);
        assert!(res[0].is_empty());
        assert!(!res[1].is_empty());
        assert!(matches!(infinitesimal(&def), Err(Error::NotADeformation { order: 1 })));
        let c = ConeCochain::pair(Cochain::new(3, 2, mu1).unwrap(), Cochain::zero(3, 3, 1)).unwrap();
        assert!(!regular_complex(&def).unwrap().classify(&c).unwrap().cocycle);
    }

    #[test]
    fn gauge_of_trivial_is_residual_free() {
        let def = TruncatedDeformation::trivial(&g3(), &k0(), 3).unwrap();
        let psi1 = Matrix::from_int_rows(&[&[1, 0, 2], &[0, 1, -1], &[1, 0, 0]]);
        let out = gauged(&def, &psi1);
        assert!(deformation_residuals(&out).iter().all(OrderResiduals::is_empty));
        let inf = infinitesimal(&out).unwrap();
        let cx = regular_complex(&def).unwrap();
        let expected =
            cx.apply_cone(&ConeCochain::pair(Cochain::from_linear_map(&psi1), Cochain::zero(3, 3, 0)).unwrap());
        assert_eq!(inf, expected);
        assert!(cx.classify(&inf).unwrap().coboundary);
    }

    #[test]
    fn e11_gauge_on_g3() {
        let def = TruncatedDeformation::trivial(&g3(), &k0(), 1).unwrap();
        let out = gauged(&def, &e(3, 0, 0));
        // μ'_1 = μ(ψ_1 ⊗ I) + μ(I ⊗ ψ_1) - ψ_1 μ: [e1,e1] = e3 picks up 2 e3
        assert_eq!(
            out.mu(1),
            &Matrix::from_fn(3, 9, |r, c| if (r, c) == (2, 0) { s(2) } else { s(0) })
        );
        assert!(out.k(1).is_zero());
        let inf = infinitesimal(&out).unwrap();
        assert!(regular_complex(&def).unwrap().classify(&inf).unwrap().coboundary);
    }

    #[test]
    fn identity_iso_and_inverse() {
        let def = TruncatedDeformation::trivial(&g3(), &k0(), 2).unwrap();
        let def = gauged(&def, &e(3, 1, 0));
        assert_eq!(apply_formal_iso(&def, &FormalIso::identity(3, 2)).unwrap(), def);
        let iso = FormalIso::from_higher(3, vec![e(3, 0, 2), e(3, 2, 1).scale(&s(3))]).unwrap();
        let there = apply_formal_iso(&def, &iso).unwrap();
        assert_eq!(apply_formal_iso(&there, &iso.inverse()).unwrap(), def);
        assert!(matches!(
            apply_formal_iso(&def, &FormalIso::identity(3, 1)),
            Err(Error::OrderMismatch(2, 1))
        ));
    }

    #[test]
    fn formal_iso_needs_identity_start() {
        assert!(matches!(
            FormalIso::new(vec![Matrix::zeros(2, 2)]),
            Err(Error::NotUnipotent)
        ));
    }

    #[test]
    fn equivalence_residuals_examples() {
        let base = TruncatedDeformation::trivial(&g3(), &k0(), 2).unwrap();
        let d1 = gauged(&base, &e(3, 2, 0));
        let id = FormalIso::identity(3, 2);
        assert!(equivalence_residuals(&d1, &d1, &id)
            .unwrap()
            .iter()
            .all(DefectReport::is_empty));
        let iso = FormalIso::from_higher(3, vec![e(3, 0, 0), e(3, 1, 2)]).unwrap();
        let d2 = apply_formal_iso(&d1, &iso).unwrap();
        assert!(equivalence_residuals(&d1, &d2, &iso)
            .unwrap()
            .iter()
            .all(DefectReport::is_empty));
        assert!(!equivalence_residuals(&d1, &d2, &id)
            .unwrap()
            .iter()
            .all(DefectReport::is_empty));

        let cx = regular_complex(&d1).unwrap();
        let diff = infinitesimal(&d2).unwrap().sub(&infinitesimal(&d1).unwrap());
        let shift = ConeCochain::pair(Cochain::from_linear_map(&e(3, 0, 0)), Cochain::zero(3, 3, 0)).unwrap();
        assert_eq!(diff, cx.apply_cone(&shift));
    }

    #[test]
    fn gauge_step_examples() {
        let def = TruncatedDeformation::trivial(&g3(), &k0(), 2).unwrap();
        assert_eq!(
            gauge_step(&def, &Matrix::zeros(3, 3), &[s(0), s(0), s(0)]).unwrap(),
            def
        );

        let psi1 = Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 2, 1]]);
        let moved = gauged(&def, &psi1);
        let out = gauge_step(&moved, &psi1, &[s(0), s(0), s(0)]).unwrap();
        assert!(out.mu(1).is_zero() && out.k(1).is_zero());
        assert!(is_deformation_through(&out, 1));

        assert!(matches!(
            gauge_step(&moved, &Matrix::zeros(3, 3), &[s(0), s(0), s(0)]),
            Err(Error::NotACoboundaryWitness)
        ));
    }

    #[test]
    fn gauge_step_trivializes_sl2() {
        let a = sl2();
        let ctx = OperatorContext::new(Matrix::identity(3), s(-1));
        let def = TruncatedDeformation::trivial(&a, &ctx, 2).unwrap();
        let cx = regular_complex(&def).unwrap();
        let cocycles = kernel_basis(&cx.cone(2));
        assert!(!cocycles.is_empty());
        for (t, z) in cocycles.iter().enumerate().step_by(7) {
            let c = ConeCochain::from_coordinates(3, 3, 2, z).unwrap();
            let mu1 = c.leib.values().clone();
            let k1 = c.op.as_ref().unwrap().values().clone();
            let mu2 = Matrix::from_fn(3, 9, |r, col| s(((r + col + t) % 3) as i64 - 1));
            let def = TruncatedDeformation::new(&a, &ctx, vec![mu1, mu2], vec![k1, Matrix::zeros(3, 3)]).unwrap();
            assert!(is_deformation_through(&def, 1));
            let cls = cx.classify(&c).unwrap();
            let w = cls.witness.expect("second cohomology vanishes");
            let x = w.op.as_ref().unwrap().values().column(0);
            let out = gauge_step(&def, w.leib.values(), &x).unwrap();
            assert!(out.mu(1).is_zero() && out.k(1).is_zero());
        }
    }
}
