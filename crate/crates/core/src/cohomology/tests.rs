use super::*;
use crate::algebra::fixtures::*;
use crate::algebra::grid_search_operators;
use crate::linalg::{basis_vector, kernel_basis, rank};

fn regular(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Representation {
    Representation::regular(a, ctx.operator.clone()).unwrap()
}

/// `sl2` in the basis `(e, f, h)`.
pub(crate) fn sl2() -> LeibnizAlgebra {
    LeibnizAlgebra::new(
        3,
        [
            (2, 0, 0, s(2)),
            (0, 2, 0, s(-2)),
            (2, 1, 1, s(-2)),
            (1, 2, 1, s(2)),
            (0, 1, 2, s(1)),
            (1, 0, 2, s(-1)),
        ],
    )
    .unwrap()
}

fn fixtures() -> Vec<(&'static str, MrbComplex)> {
    let mut out = Vec::new();
    let (a, ctx) = (g3(), k0());
    out.push(("g3-k0-regular", MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap()));
    let kv = Matrix::from_int_rows(&[&[1, 2], &[0, 3]]);
    out.push((
        "g3-k0-trivial",
        MrbComplex::new(&a, &ctx, &Representation::trivial(3, kv).unwrap()).unwrap(),
    ));
    let weight0 = grid_search_operators(&a, &s(0), &[s(0), s(1)], None).unwrap();
    let ctx = OperatorContext::new(weight0.last().unwrap().clone(), s(0));
    out.push((
        "g3-weight0-regular",
        MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap(),
    ));
    let kv = Matrix::from_int_rows(&[&[2]]);
    out.push((
        "g3-weight0-trivial",
        MrbComplex::new(&a, &ctx, &Representation::trivial(3, kv).unwrap()).unwrap(),
    ));
    let a = lie2();
    let ops = grid_search_operators(&a, &s(-1), &[s(-1), s(0), s(1)], None).unwrap();
    for k in ops
        .iter()
        .filter(|k| !k.is_identity() && *k != &Matrix::identity(2).neg())
        .take(2)
    {
        let ctx = OperatorContext::new(k.clone(), s(-1));
        out.push(("lie2-regular", MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap()));
    }
    let a = LeibnizAlgebra::abelian(1);
    let ctx = OperatorContext::new(Matrix::zeros(1, 1), s(0));
    out.push((
        "zero-1",
        MrbComplex::new(&a, &ctx, &Representation::trivial(1, Matrix::zeros(1, 1)).unwrap()).unwrap(),
    ));
    let a = sl2();
    let ctx = OperatorContext::new(Matrix::identity(3), s(-1));
    out.push(("sl2-identity", MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap()));
    out
}

#[test]
fn delta_examples_on_g3() {
    let a = g3();
    let r = Representation::regular(&a, Matrix::zeros(3, 3)).unwrap();
    let d0 = delta_matrix(&a, &r, 0).unwrap();
    assert_eq!(d0.shape(), (9, 3));
    // δ⁰(e1)(e1) = -e3
    assert_eq!(d0.column(0)[2], s(-1));
    assert_eq!(rank(&d0), 1);
    let kernel = kernel_basis(&d0);
    assert_eq!(kernel, vec![basis_vector(3, 1), basis_vector(3, 2)]);

    let d1 = delta_matrix(&a, &r, 1).unwrap();
    assert_eq!(d1.shape(), (27, 9));
    assert_eq!(kernel_basis(&d1).len(), 5);

    let id = Cochain::from_linear_map(&Matrix::identity(3));
    let image = apply_delta(&a, &r, &id);
    assert_eq!(image.values(), &a.bracket_cochain());
    assert_eq!(d1.mul_vec(&id.coordinates()), image.coordinates());
}

#[test]
fn delta_checks_shapes() {
    let r = Representation::trivial(2, Matrix::zeros(1, 1)).unwrap();
    assert!(matches!(
        delta_matrix(&g3(), &r, 0),
        Err(crate::Error::DimensionMismatch(_))
    ));
}

#[test]
fn partial_example_on_g3() {
    let (a, ctx) = (g3(), k0());
    let p0 = partial_matrix(&a, &ctx, &regular(&a, &ctx), 0).unwrap();
    assert_eq!(p0.column(0)[2], s(-1));
    assert_eq!(kernel_basis(&p0), vec![basis_vector(3, 1), basis_vector(3, 2)]);
}

#[test]
fn partial_vanishes_for_zero_data() {
    let a = LeibnizAlgebra::abelian(2);
    let ctx = OperatorContext::new(Matrix::zeros(2, 2), s(0));
    let r = Representation::trivial(2, Matrix::zeros(1, 1)).unwrap();
    for n in 0..3 {
        assert!(partial_matrix(&a, &ctx, &r, n).unwrap().is_zero());
    }
}

#[test]
fn phi_examples() {
    let (a, ctx) = (g3(), k0());
    let cx = MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap();
    assert_eq!(cx.phi(0), Matrix::identity(3));
    let id = Cochain::from_linear_map(&Matrix::identity(3));
    assert!(cx.apply_phi(&id).is_zero());
    let mu = Cochain::new(3, 2, a.bracket_cochain()).unwrap();
    assert!(cx.apply_phi(&mu).is_zero());
    assert!(cx.phi(2).mul_vec(&mu.coordinates()).iter().all(Scalar::is_zero));
}

#[test]
fn phi_two_at_weight_zero() {
    // Φ²(f)(x,y) = f(Kx,Ky) - K_V(f(Kx,y) + f(x,Ky)) with no weight term
    let k = Matrix::from_int_rows(&[&[1, 2], &[0, -1]]);
    let kv = Matrix::from_int_rows(&[&[3]]);
    let ctx = OperatorContext::new(k.clone(), s(0));
    let f = Cochain::new(2, 2, Matrix::from_int_rows(&[&[1, -2, 5, 7]])).unwrap();
    let got = eval::apply_phi(&ctx, &kv, &f);
    for i in 0..2 {
        for j in 0..2 {
            let (x, y) = (basis_vector(2, i), basis_vector(2, j));
            let (kx, ky) = (k.mul_vec(&x), k.mul_vec(&y));
            let inner = crate::linalg::vec_add(&f.eval(&[kx.clone(), y.clone()]), &f.eval(&[x.clone(), ky.clone()]));
            let expected = crate::linalg::vec_sub(&f.eval(&[kx, ky]), &kv.mul_vec(&inner));
            assert_eq!(got.eval(&[x, y]), expected);
        }
    }
}

#[test]
fn subset_weights() {
    let l = s(3);
    let w: Vec<Scalar> = (0..5).map(|r| eval::subset_weight(r, &l)).collect();
    assert_eq!(w, vec![s(1), s(-1), s(-3), s(3), s(9)]);
}

#[test]
fn matrices_match_evaluators() {
    for (name, cx) in fixtures() {
        let (m, d) = (cx.dim_v(), cx.algebra_dim());
        for n in 0..3 {
            let coords: Vec<Scalar> = (0..cx.leib_dim(n)).map(|p| s((p as i64 * 7 + 3) % 5 - 2)).collect();
            let f = Cochain::from_coordinates(m, d, n, &coords).unwrap();
            assert_eq!(
                cx.delta(n).mul_vec(&coords),
                cx.apply_delta(&f).coordinates(),
                "{name} δ{n}"
            );
            assert_eq!(
                cx.phi(n).mul_vec(&coords),
                cx.apply_phi(&f).coordinates(),
                "{name} Φ{n}"
            );
        }
    }
}

#[test]
fn phi_is_a_chain_map() {
    for (name, cx) in fixtures() {
        for n in 0..=3 {
            let lhs = cx.phi(n + 1).mul(&cx.delta(n));
            let rhs = cx.partial(n).mul(&cx.phi(n));
            assert_eq!(lhs, rhs, "{name} n={n}");
        }
    }
}

#[test]
fn differentials_square_to_zero() {
    for (name, cx) in fixtures() {
        for n in 0..=2 {
            assert!(cx.delta(n + 1).mul(&cx.delta(n)).is_zero(), "{name} δ n={n}");
            assert!(cx.partial(n + 1).mul(&cx.partial(n)).is_zero(), "{name} ∂ n={n}");
            assert!(cx.cone(n + 1).mul(&cx.cone(n)).is_zero(), "{name} d n={n}");
        }
    }
}

#[test]
fn cone_degree_zero_is_injective_on_g3() {
    let (a, ctx) = (g3(), k0());
    let d0 = cone_differential(&a, &ctx, &regular(&a, &ctx), 0).unwrap();
    assert_eq!(d0.shape(), (12, 3));
    assert_eq!(rank(&d0), 3);
}

#[test]
fn cone_block_matches_pair_formula() {
    let (a, ctx) = (g3(), k0());
    let cx = MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap();
    let psi = Cochain::from_linear_map(&Matrix::from_int_rows(&[&[1, 0, 2], &[0, -1, 0], &[3, 0, 1]]));
    let c = ConeCochain::pair(psi.clone(), Cochain::zero(3, 3, 0)).unwrap();
    let image = cx.apply_cone(&c);
    assert_eq!(image.leib, cx.apply_delta(&psi));
    assert_eq!(image.op, Some(cx.apply_phi(&psi).neg()));
    assert_eq!(cx.cone(1).mul_vec(&c.coordinates()), image.coordinates());
}

#[test]
fn dimensions_on_g3_leibniz() {
    let a = g3();
    let r = Representation::regular(&a, Matrix::zeros(3, 3)).unwrap();
    let report = leibniz_cohomology(&a, &r, 1, &CohomologyOptions::default()).unwrap();
    assert_eq!(report.leibniz.dims(), vec![2, 4]);
    assert!(report.cone.is_none());
}

#[test]
fn dimensions_on_zero_algebra() {
    let a = LeibnizAlgebra::abelian(1);
    let ctx = OperatorContext::new(Matrix::zeros(1, 1), s(0));
    let r = Representation::trivial(1, Matrix::zeros(1, 1)).unwrap();
    let report = cohomology_dimensions(&a, &ctx, &r, 3, &CohomologyOptions::default()).unwrap();
    assert_eq!(report.cone.as_ref().unwrap().dims(), vec![0, 1, 2, 2]);
    assert_eq!(report.leibniz.dims(), vec![1, 1, 1, 1]);
    assert_eq!(report.operator.as_ref().unwrap().dims(), vec![1, 1, 1, 1]);
}

#[test]
fn dimensions_on_g3_k0() {
    let (a, ctx) = (g3(), k0());
    let r = regular(&a, &ctx);
    let report = cohomology_dimensions(&a, &ctx, &r, 3, &CohomologyOptions::default()).unwrap();
    let cone = report.cone.as_ref().unwrap().dims();
    assert_eq!(cone[0], 0);
    let cx = MrbComplex::new(&a, &ctx, &r).unwrap();
    assert_eq!(cx.cone_dims_blockwise(3), cone);
}

#[test]
fn blockwise_path_agrees_everywhere() {
    for (name, cx) in fixtures() {
        let report = cx.report(2, false).unwrap();
        assert_eq!(cx.cone_dims_blockwise(2), report.cone.unwrap().dims(), "{name}");
    }
}

#[test]
fn degree_bound_and_budget() {
    let (a, ctx) = (g3(), k0());
    let r = regular(&a, &ctx);
    assert!(matches!(
        cohomology_dimensions(&a, &ctx, &r, 4, &CohomologyOptions::default()),
        Err(crate::Error::DegreeBound { requested: 4, bound: 3 })
    ));
    let tight = CohomologyOptions {
        cell_budget: 100,
        ..CohomologyOptions::default()
    };
    assert!(matches!(
        cohomology_dimensions(&a, &ctx, &r, 1, &tight),
        Err(crate::Error::BudgetExceeded { .. })
    ));
}

#[test]
fn representatives_span_cohomology() {
    let (a, ctx) = (g3(), k0());
    let cx = MrbComplex::new(&a, &ctx, &regular(&a, &ctx)).unwrap();
    let report = cx.report(2, true).unwrap();
    for summary in [
        &report.leibniz,
        report.operator.as_ref().unwrap(),
        report.cone.as_ref().unwrap(),
    ] {
        let reps = summary.representatives.as_ref().unwrap();
        for (n, list) in reps.iter().enumerate() {
            assert_eq!(list.len(), summary.degrees[n].cohomology);
        }
    }
}

#[test]
fn classify_examples() {
    let (a, ctx) = (g3(), k0());
    let r = regular(&a, &ctx);
    let cx = MrbComplex::new(&a, &ctx, &r).unwrap();

    let zero = ConeCochain::zero(3, 3, 2);
    let c = cx.classify(&zero).unwrap();
    assert!(c.cocycle && c.coboundary);

    let psi = Cochain::from_linear_map(&Matrix::from_int_rows(&[&[0, 1, 0], &[2, 0, 0], &[0, 0, -1]]));
    let image = cx.apply_cone(&ConeCochain::pair(psi, Cochain::zero(3, 3, 0)).unwrap());
    let c = cx.classify(&image).unwrap();
    assert!(c.cocycle && c.coboundary);
    assert_eq!(cx.apply_cone(&c.witness.unwrap()), image);

    let mu = ConeCochain::pair(Cochain::new(3, 2, a.bracket_cochain()).unwrap(), Cochain::zero(3, 3, 1)).unwrap();
    let c = cx.classify(&mu).unwrap();
    assert!(c.cocycle);
    if let Some(w) = &c.witness {
        assert_eq!(cx.apply_cone(w), mu);
    }
}

#[test]
fn cone_is_bounded_by_its_pieces() {
    for (name, cx) in fixtures() {
        let r = cx.report(3, false).unwrap();
        let (leib, op, cone) = (r.leibniz.dims(), r.operator.unwrap().dims(), r.cone.unwrap().dims());
        for n in 0..=3 {
            let prev = if n == 0 { 0 } else { op[n - 1] };
            assert!(cone[n] <= leib[n] + prev, "{name} n={n}");
        }
    }
}

#[test]
fn sl2_with_identity_has_no_second_cohomology() {
    let a = sl2();
    let ctx = OperatorContext::new(Matrix::identity(3), s(-1));
    let r = regular(&a, &ctx);
    let report = cohomology_dimensions(&a, &ctx, &r, 2, &CohomologyOptions::default()).unwrap();
    assert_eq!(report.cone.unwrap().dims()[2], 0);
}
