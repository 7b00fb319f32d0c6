//! Abelian extensions `0 -> V -> ĝ -> g -> 0` of modified Rota-Baxter
//! Leibniz algebras and their 2-cocycles.

use crate::algebra::{
    leibniz_defect, morphism_defect, mrb_defect, require_leibniz, require_mrb, LeibnizAlgebra, OperatorContext,
};
use crate::cohomology::{Cochain, ConeCochain, MrbComplex};
use crate::defect::DefectReport;
use crate::linalg::{kernel_basis, rank, solve, solve_left_inverse, solve_right_inverse, Matrix, Scalar};
use crate::rep::{direct_sum_model, mrb_rep_defect, rep_defect, require_mrb_rep, require_rep, Representation};
use crate::{Error, Result};

/// An extension with explicit inclusion `i: V -> ĝ` and projection
/// `p: ĝ -> g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionData {
    total: LeibnizAlgebra,
    total_op: OperatorContext,
    incl: Matrix,
    proj: Matrix,
    base: LeibnizAlgebra,
    base_ctx: OperatorContext,
    fiber_op: Matrix,
}

impl ExtensionData {
    /// Checks shapes only; see [`validate_extension`] for the axioms.
    pub fn new(
        total: LeibnizAlgebra,
        total_op: OperatorContext,
        incl: Matrix,
        proj: Matrix,
        base: LeibnizAlgebra,
        base_ctx: OperatorContext,
        fiber_op: Matrix,
    ) -> Result<Self> {
        total_op.check_against(&total)?;
        base_ctx.check_against(&base)?;
        let (n, d, m) = (total.dim(), base.dim(), fiber_op.rows());
        if !fiber_op.is_square() || n != d + m || incl.shape() != (n, m) || proj.shape() != (d, n) {
            return Err(Error::DimensionMismatch(format!(
                "extension of a {d}-dimensional algebra by a {m}-dimensional module needs a {}-dimensional \
                 total algebra, a {}x{m} inclusion and a {d}x{} projection",
                d + m,
                d + m,
                d + m
            )));
        }
        Ok(ExtensionData {
            total,
            total_op,
            incl,
            proj,
            base,
            base_ctx,
            fiber_op,
        })
    }

    pub fn total(&self) -> &LeibnizAlgebra {
        &self.total
    }

    pub fn total_op(&self) -> &OperatorContext {
        &self.total_op
    }

    pub fn incl(&self) -> &Matrix {
        &self.incl
    }

    pub fn proj(&self) -> &Matrix {
        &self.proj
    }

    pub fn base(&self) -> &LeibnizAlgebra {
        &self.base
    }

    pub fn base_ctx(&self) -> &OperatorContext {
        &self.base_ctx
    }

    pub fn fiber_op(&self) -> &Matrix {
        &self.fiber_op
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_op.rows()
    }

    /// The same extension in a new basis of `ĝ`: `basis` is invertible and
    /// its columns are the new basis vectors in old coordinates.
    pub fn rebased(&self, basis: &Matrix) -> Result<Self> {
        let inv = solve_left_inverse(basis)?;
        let n = self.total.dim();
        let total = LeibnizAlgebra::from_table(n, |a, b| {
            inv.mul_vec(&self.total.bracket(&basis.column(a), &basis.column(b)))
        });
        let op = OperatorContext::new(
            inv.mul(&self.total_op.operator).mul(basis),
            self.total_op.weight.clone(),
        );
        ExtensionData::new(
            total,
            op,
            inv.mul(&self.incl),
            self.proj.mul(basis),
            self.base.clone(),
            self.base_ctx.clone(),
            self.fiber_op.clone(),
        )
    }
}

/// `(ψ, χ)`: `ψ` is `m x d^2`, `χ` is `m x d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocyclePair {
    pub psi: Matrix,
    pub chi: Matrix,
}

impl CocyclePair {
    pub fn new(psi: Matrix, chi: Matrix) -> Result<Self> {
        let (m, d) = chi.shape();
        if psi.shape() != (m, d * d) {
            return Err(Error::DimensionMismatch(format!(
                "cocycle pair shapes {}x{} and {m}x{d} do not match",
                psi.rows(),
                psi.cols()
            )));
        }
        Ok(CocyclePair { psi, chi })
    }

    pub fn zero(m: usize, d: usize) -> Self {
        CocyclePair {
            psi: Matrix::zeros(m, d * d),
            chi: Matrix::zeros(m, d),
        }
    }

    /// As an element of the degree-2 cone cochains.
    pub fn to_cone(&self) -> ConeCochain {
        let d = self.chi.cols();
        ConeCochain::pair(
            Cochain::new(d, 2, self.psi.clone()).expect("checked shape"),
            Cochain::from_linear_map(&self.chi),
        )
        .expect("checked shape")
    }

    pub fn from_cone(c: &ConeCochain) -> Result<Self> {
        match (&c.op, c.degree()) {
            (Some(g), 2) => CocyclePair::new(c.leib.values().clone(), g.values().clone()),
            _ => Err(Error::DimensionMismatch("cocycle pairs live in degree 2".into())),
        }
    }

    pub fn add(&self, other: &CocyclePair) -> CocyclePair {
        CocyclePair {
            psi: self.psi.add(&other.psi),
            chi: self.chi.add(&other.chi),
        }
    }

    pub fn sub(&self, other: &CocyclePair) -> CocyclePair {
        CocyclePair {
            psi: self.psi.sub(&other.psi),
            chi: self.chi.sub(&other.chi),
        }
    }
}

/// Every axiom of an abelian extension, one section each:
///
/// * `exactness`: `p∘i` (args `[]`); `inclusion-kernel`: a nonzero vector
///   killed by `i`; `projection-cokernel`: a nonzero functional killing the
///   image of `p`
/// * `operator-fiber`: `K̂ i - i K_V` per fiber basis vector; `operator-base`:
///   `p K̂ - K p` per total basis vector; `weight`: difference of weights
/// * `abelian`: `[i u, i v]` on fiber basis pairs
/// * `ideal-left`: `p[e, i v]`; `ideal-right`: `p[i v, e]` for total basis
///   `e` and fiber basis `v`
/// * `projection-bracket`: `p[e, e'] - [p e, p e']`
/// * `leibniz` and `modified-rota-baxter` of the total algebra
pub fn validate_extension(e: &ExtensionData) -> DefectReport {
    let (n, m) = (e.total.dim(), e.fiber_dim());
    let (i, p) = (&e.incl, &e.proj);
    let mut report = DefectReport::new();

    report.record("exactness", vec![], p.mul(i));
    if let Some(v) = kernel_basis(i).into_iter().next() {
        report.record_vec("inclusion-kernel", vec![], &v);
    }
    if rank(p) < p.rows() {
        let v = kernel_basis(&p.transpose()).into_iter().next().expect("rank deficient");
        report.record_vec("projection-cokernel", vec![], &v);
    }

    let fiber = e.total_op.operator.mul(i).sub(&i.mul(&e.fiber_op));
    for a in 0..m {
        report.record_vec("operator-fiber", vec![a], &fiber.column(a));
    }
    let base = p.mul(&e.total_op.operator).sub(&e.base_ctx.operator.mul(p));
    for c in 0..n {
        report.record_vec("operator-base", vec![c], &base.column(c));
    }
    let dw = &e.total_op.weight - &e.base_ctx.weight;
    report.record_vec("weight", vec![], &[dw]);

    let fibers: Vec<Vec<Scalar>> = (0..m).map(|a| i.column(a)).collect();
    for a in 0..m {
        for b in 0..m {
            report.record_vec("abelian", vec![a, b], &e.total.bracket(&fibers[a], &fibers[b]));
        }
    }
    for c in 0..n {
        let ec = crate::linalg::basis_vector(n, c);
        for (b, fb) in fibers.iter().enumerate() {
            report.record_vec("ideal-left", vec![c, b], &p.mul_vec(&e.total.bracket(&ec, fb)));
            report.record_vec("ideal-right", vec![c, b], &p.mul_vec(&e.total.bracket(fb, &ec)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = p.mul_vec(e.total.bracket_basis(x, y));
            let rhs = e.base.bracket(&p.column(x), &p.column(y));
            report.record_vec("projection-bracket", vec![x, y], &crate::linalg::vec_sub(&lhs, &rhs));
        }
    }

    report.extend(leibniz_defect(&e.total));
    report.extend(mrb_defect(&e.total, &e.total_op).expect("checked shape"));
    report
}

/// A right inverse of the projection, with free coordinates set to zero.
pub fn section_from_proj(e: &ExtensionData) -> Result<Matrix> {
    let s = solve_right_inverse(&e.proj)?;
    if !e.proj.mul(&s).is_identity() {
        return Err(Error::Postcondition("section is not a right inverse of the projection"));
    }
    Ok(s)
}

/// The retraction `t: ĝ -> V` with `i t + s p = I`.
fn retraction(e: &ExtensionData, s: &Matrix) -> Result<Matrix> {
    let left = solve_left_inverse(&e.incl)?;
    let n = e.total.dim();
    Ok(left.mul(&Matrix::identity(n).sub(&s.mul(&e.proj))))
}

/// Reads the representation and the cocycle of an extension through a
/// section `s`:
///
/// ```text
/// ρ^L(x)v = t[s x, i v]    ψ(x, y) = t([s x, s y] - s[x, y])
/// ρ^R(x)v = t[i v, s x]    χ(x)    = t(K̂ s x - s K x)
/// ```
pub fn extract_cocycle(e: &ExtensionData, s: &Matrix) -> Result<(Representation, CocyclePair)> {
    let report = validate_extension(e);
    if !report.is_empty() {
        return Err(Error::NotAnExtension(report));
    }
    let (d, m) = (e.base.dim(), e.fiber_dim());
    if s.shape() != (e.total.dim(), d) || !e.proj.mul(s).is_identity() {
        return Err(Error::NotASection);
    }
    let t = retraction(e, s)?;
    let sx: Vec<Vec<Scalar>> = (0..d).map(|x| s.column(x)).collect();
    let iv: Vec<Vec<Scalar>> = (0..m).map(|v| e.incl.column(v)).collect();
    let action = |left: bool| -> Vec<Matrix> {
        (0..d)
            .map(|x| {
                let cols: Vec<Vec<Scalar>> = (0..m)
                    .map(|v| {
                        let b = if left {
                            e.total.bracket(&sx[x], &iv[v])
                        } else {
                            e.total.bracket(&iv[v], &sx[x])
                        };
                        t.mul_vec(&b)
                    })
                    .collect();
                Matrix::from_columns(m, &cols)
            })
            .collect()
    };
    let rep = Representation::new(m, action(true), action(false), e.fiber_op.clone())?;

    let mut psi_cols = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            let lifted = e.total.bracket(&sx[x], &sx[y]);
            let down = s.mul_vec(e.base.bracket_basis(x, y));
            psi_cols.push(t.mul_vec(&crate::linalg::vec_sub(&lifted, &down)));
        }
    }
    let psi = Matrix::from_columns(m, &psi_cols);
    let chi = t.mul(&e.total_op.operator.mul(s).sub(&s.mul(&e.base_ctx.operator)));
    let pair = CocyclePair::new(psi, chi)?;

    if !rep_defect(&e.base, &rep)?.is_empty() || !mrb_rep_defect(&e.base, &e.base_ctx, &rep)?.is_empty() {
        return Err(Error::Postcondition("extracted maps are not a representation"));
    }
    let cx = MrbComplex::new(&e.base, &e.base_ctx, &rep)?;
    if !cx.apply_cone(&pair.to_cone()).is_zero() {
        return Err(Error::Postcondition("extracted pair is not a cocycle"));
    }
    Ok((rep, pair))
}

/// The direct-sum model on `g ⊕ V` with bracket
/// `[x+u, y+v] = [x,y] + ρ^L(x)v + ρ^R(y)u + ψ(x,y)` and operator
/// `K(x) + χ(x) + K_V(u)`. Fails with the validation report unless `c` is a
/// cocycle.
pub fn extension_from_cocycle(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    c: &CocyclePair,
) -> Result<ExtensionData> {
    require_leibniz(a)?;
    require_mrb(a, ctx)?;
    require_rep(a, r)?;
    require_mrb_rep(a, ctx, r)?;
    let (d, m) = (a.dim(), r.dim_v());
    if c.chi.shape() != (m, d) {
        return Err(Error::DimensionMismatch(format!(
            "cocycle pair is {}x{}, expected {m}x{d}",
            c.chi.rows(),
            c.chi.cols()
        )));
    }
    let (total, total_op) = direct_sum_model(a, ctx, r, Some(&c.psi), Some(&c.chi));
    let mut incl = Matrix::zeros(d + m, m);
    incl.set_block(d, 0, &Matrix::identity(m));
    let mut proj = Matrix::zeros(d, d + m);
    proj.set_block(0, 0, &Matrix::identity(d));
    let e = ExtensionData::new(total, total_op, incl, proj, a.clone(), ctx.clone(), r.k_v().clone())?;
    let report = validate_extension(&e);
    if !report.is_empty() {
        return Err(Error::NotACocycle(report));
    }
    Ok(e)
}

/// `γ` with `c2 - c1 = d^1(γ, 0)`, if the two cocycles are cohomologous.
/// A solution `(γ_1, x)` of `d^1(γ_1, x) = c2 - c1` is folded into
/// `γ = γ_1 + δ^0 x`.
pub fn cohomologous_gamma(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    c1: &CocyclePair,
    c2: &CocyclePair,
) -> Result<Option<Matrix>> {
    let cx = MrbComplex::new(a, ctx, r)?;
    let diff = c2.sub(c1).to_cone();
    let (m, d) = (r.dim_v(), a.dim());
    let Some(x) = solve(&cx.cone(1), &diff.coordinates()) else {
        return Ok(None);
    };
    let w = ConeCochain::from_coordinates(m, d, 1, &x)?;
    let shift = cx.apply_delta(w.op.as_ref().expect("degree 1"));
    Ok(Some(w.leib.values().add(shift.values())))
}

fn is_canonical(e: &ExtensionData) -> bool {
    let (d, m) = (e.base.dim(), e.fiber_dim());
    (0..m).all(|a| e.incl.column(a) == crate::linalg::basis_vector(d + m, d + a))
        && (0..d).all(|x| e.proj.row(x) == crate::linalg::basis_vector(d + m, x).as_slice())
}

/// `ζ(x + u) = x - γ(x) + u` between direct-sum models whose cocycles
/// satisfy `c2 - c1 = d^1(γ, 0)`. The result is checked to be an
/// isomorphism of extensions from `e1` to `e2`.
pub fn iso_from_gamma(e1: &ExtensionData, e2: &ExtensionData, gamma: &Matrix) -> Result<Matrix> {
    if e1.base != e2.base || e1.base_ctx != e2.base_ctx || e1.fiber_op != e2.fiber_op {
        return Err(Error::DimensionMismatch(
            "extensions over different bases or modules".into(),
        ));
    }
    if !is_canonical(e1) || !is_canonical(e2) {
        return Err(Error::DimensionMismatch("expected direct-sum models".into()));
    }
    let (d, m) = (e1.base.dim(), e1.fiber_dim());
    if gamma.shape() != (m, d) {
        return Err(Error::DimensionMismatch(format!("γ must be {m}x{d}")));
    }
    let s = section_from_proj(e1)?;
    let (r1, c1) = extract_cocycle(e1, &s)?;
    let (r2, c2) = extract_cocycle(e2, &s)?;
    if r1 != r2 {
        return Err(Error::NotCohomologous);
    }
    let cx = MrbComplex::new(&e1.base, &e1.base_ctx, &r1)?;
    let shift = ConeCochain::pair(Cochain::from_linear_map(gamma), Cochain::zero(m, d, 0))?;
    if c2.sub(&c1).to_cone() != cx.apply_cone(&shift) {
        return Err(Error::NotCohomologous);
    }
    let mut zeta = Matrix::identity(d + m);
    zeta.set_block(d, 0, &gamma.neg());
    let ok = morphism_defect(&e1.total, &e1.total_op, &e2.total, &e2.total_op, &zeta)?.is_empty()
        && zeta.mul(&e1.incl) == e2.incl
        && e2.proj.mul(&zeta) == e1.proj;
    if !ok {
        return Err(Error::Postcondition("ζ is not an isomorphism of extensions"));
    }
    Ok(zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::rep::semidirect;

    fn regular() -> Representation {
        Representation::regular(&g3(), k0().operator).unwrap()
    }

    fn canonical_section(d: usize, m: usize) -> Matrix {
        let mut s = Matrix::zeros(d + m, d);
        s.set_block(0, 0, &Matrix::identity(d));
        s
    }

    fn cocycles(cx: &MrbComplex) -> Vec<CocyclePair> {
        let (m, d) = (cx.dim_v(), cx.algebra_dim());
        kernel_basis(&cx.cone(2))
            .iter()
            .map(|z| CocyclePair::from_cone(&ConeCochain::from_coordinates(m, d, 2, z).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn semidirect_extension_is_valid() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let e = extension_from_cocycle(&a, &ctx, &r, &CocyclePair::zero(3, 3)).unwrap();
        assert!(validate_extension(&e).is_empty());
        let (total, op) = semidirect(&a, &ctx, &r).unwrap();
        assert_eq!((e.total(), e.total_op()), (&total, &op));
        let s = section_from_proj(&e).unwrap();
        assert_eq!(s, canonical_section(3, 3));
        let (rep, pair) = extract_cocycle(&e, &s).unwrap();
        assert_eq!(rep, r);
        assert_eq!(pair, CocyclePair::zero(3, 3));
    }

    #[test]
    fn perturbations_are_diagnosed() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let e = extension_from_cocycle(&a, &ctx, &r, &CocyclePair::zero(3, 3)).unwrap();
        let mut op = e.total_op().operator.clone();
        op[(4, 4)] = s(5);
        let bad = ExtensionData {
            total_op: OperatorContext::new(op, s(1)),
            ..e.clone()
        };
        assert!(validate_extension(&bad).has_section("operator-fiber"));

        // a nonzero bracket on the fiber: [v1, v1] = v2
        let total = LeibnizAlgebra::from_table(6, |p, q| {
            let mut v = e.total().bracket_basis(p, q).to_vec();
            if (p, q) == (3, 3) {
                v[4] = s(1);
            }
            v
        });
        let bad = ExtensionData { total, ..e };
        assert!(validate_extension(&bad).has_section("abelian"));
    }

    #[test]
    fn round_trip_and_section_change() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let cx = MrbComplex::new(&a, &ctx, &r).unwrap();
        let zs = cocycles(&cx);
        let c = zs[0].add(&zs[zs.len() - 1]);
        let e = extension_from_cocycle(&a, &ctx, &r, &c).unwrap();
        let s = canonical_section(3, 3);
        let (rep, got) = extract_cocycle(&e, &s).unwrap();
        assert_eq!((rep, &got), (r.clone(), &c));

        let gamma = Matrix::from_int_rows(&[&[1, 0, -1], &[2, 1, 0], &[0, 0, 3]]);
        let s2 = s.add(&e.incl().mul(&gamma));
        let (rep2, moved) = extract_cocycle(&e, &s2).unwrap();
        assert_eq!(rep2, r);
        let shift =
            cx.apply_cone(&ConeCochain::pair(Cochain::from_linear_map(&gamma), Cochain::zero(3, 3, 0)).unwrap());
        assert_eq!(moved.to_cone(), c.to_cone().add(&shift));
    }

    #[test]
    fn permuted_basis_section() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let e = extension_from_cocycle(&a, &ctx, &r, &CocyclePair::zero(3, 3)).unwrap();
        // new basis: fiber vectors first, then the algebra
        let perm = Matrix::from_fn(6, 6, |row, col| if row == (col + 3) % 6 { s(1) } else { s(0) });
        let e2 = e.rebased(&perm).unwrap();
        assert!(validate_extension(&e2).is_empty());
        let sec = section_from_proj(&e2).unwrap();
        assert_eq!(sec, perm.transpose().mul(&canonical_section(3, 3)));
        let (rep, pair) = extract_cocycle(&e2, &sec).unwrap();
        assert_eq!((rep, pair), (r, CocyclePair::zero(3, 3)));
    }

    #[test]
    fn one_dimensional_trivial_module() {
        let a = g3();
        let ctx = k0();
        let r = Representation::trivial(3, Matrix::from_int_rows(&[&[2]])).unwrap();
        let cx = MrbComplex::new(&a, &ctx, &r).unwrap();
        let zs = cocycles(&cx);
        let nonzero: Vec<_> = zs.iter().filter(|c| !c.psi.is_zero()).collect();
        assert!(!nonzero.is_empty());
        for c in nonzero {
            // δ²ψ = 0 forces ψ(e3, ·) = 0 and ψ(e2, e3) = 0
            for y in 0..3 {
                assert!(c.psi[(0, 2 * 3 + y)].is_zero());
            }
            assert!(c.psi[(0, 3 + 2)].is_zero());
            let e = extension_from_cocycle(&a, &ctx, &r, c).unwrap();
            assert!(validate_extension(&e).is_empty());
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let c = CocyclePair::new(Matrix::unit(3, 9, 0, 8), Matrix::zeros(3, 3)).unwrap();
        match extension_from_cocycle(&a, &ctx, &r, &c) {
            Err(Error::NotACocycle(report)) => assert!(!report.is_empty()),
            other => panic!("expected NotACocycle, got {other:?}"),
        }
    }

    #[test]
    fn cohomologous_cocycles_give_isomorphic_extensions() {
        let (a, ctx, r) = (g3(), k0(), regular());
        let cx = MrbComplex::new(&a, &ctx, &r).unwrap();
        let e0 = extension_from_cocycle(&a, &ctx, &r, &CocyclePair::zero(3, 3)).unwrap();
        assert_eq!(
            iso_from_gamma(&e0, &e0, &Matrix::zeros(3, 3)).unwrap(),
            Matrix::identity(6)
        );

        let c1 = cocycles(&cx)[1].clone();
        let gamma = Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 2], &[-1, 0, 1]]);
        let shift =
            cx.apply_cone(&ConeCochain::pair(Cochain::from_linear_map(&gamma), Cochain::zero(3, 3, 0)).unwrap());
        let c2 = c1.add(&CocyclePair::from_cone(&shift).unwrap());
        let e1 = extension_from_cocycle(&a, &ctx, &r, &c1).unwrap();
        let e2 = extension_from_cocycle(&a, &ctx, &r, &c2).unwrap();
        let zeta = iso_from_gamma(&e1, &e2, &gamma).unwrap();
        assert!(matches!(iso_from_gamma(&e2, &e1, &gamma), Err(Error::NotCohomologous)));

        let found = cohomologous_gamma(&a, &ctx, &r, &c1, &c2).unwrap().unwrap();
        assert!(iso_from_gamma(&e1, &e2, &found).is_ok());

        let s1 = canonical_section(3, 3);
        let (_, p1) = extract_cocycle(&e1, &s1).unwrap();
        let transported = ExtensionData {
            incl: zeta.mul(e1.incl()),
            ..e2.clone()
        };
        let (_, p2) = extract_cocycle(&transported, &zeta.mul(&s1)).unwrap();
        assert_eq!(p1, p2);
    }
}
