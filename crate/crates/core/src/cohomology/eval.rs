//! Evaluators for the differentials on arbitrary cochains. Each one walks
//! the nonzero values of the input and scatters their contributions, so a
//! basis cochain costs only the terms it actually touches.

use crate::algebra::{LeibnizAlgebra, OperatorContext};
use crate::linalg::{count, flat_position, Matrix, MultiIndex, Scalar};
use crate::rep::Representation;

use super::Cochain;

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Adds `c * M u` into the output column at flat position `col`.
fn scatter(out: &mut [Scalar], m: usize, col: usize, c: &Scalar, mat: Option<&Matrix>, u: &[Scalar]) {
    let base = col * m;
    match mat {
        None => {
            for (a, ua) in u.iter().enumerate() {
                if !ua.is_zero() {
                    out[base + a] += &(c * ua);
                }
            }
        }
        Some(mat) => {
            for (b, ub) in u.iter().enumerate() {
                if ub.is_zero() {
                    continue;
                }
                let cb = c * ub;
                for a in 0..m {
                    let e = &mat[(a, b)];
                    if !e.is_zero() {
                        out[base + a] += &(e * &cb);
                    }
                }
            }
        }
    }
}

/// The Loday-Pirashvili coboundary `δf` for `f ∈ C^n(g, V)`:
///
/// ```text
/// δf(x_1..x_{n+1}) = Σ_i (-1)^{i+1} ρ^L(x_i) f(.., x̂_i, ..)
///                  + (-1)^{n+1} ρ^R(x_{n+1}) f(x_1..x_n)
///                  + Σ_{i<k} (-1)^i f(.., x̂_i, .., [x_i, x_k], ..)
/// ```
///
/// with the bracket in slot `k`. At `n = 0` only the middle term survives.
pub fn apply_delta(a: &LeibnizAlgebra, r: &Representation, f: &Cochain) -> Cochain {
    let d = a.dim();
    let m = r.dim_v();
    let n = f.degree();
    // producers[c] lists (x, y, coefficient of e_c in [e_x, e_y])
    let mut producers: Vec<Vec<(usize, usize, &Scalar)>> = vec![Vec::new(); d];
    for (x, y, c, coef) in a.constants() {
        producers[c].push((x, y, coef));
    }
    let mut out = vec![Scalar::zero(); m * count(d, n + 1)];
    let mut j = vec![0usize; n + 1];
    for col in 0..count(d, n) {
        let u = f.values().column(col);
        if u.iter().all(Scalar::is_zero) {
            continue;
        }
        let idx = MultiIndex::from_flat(d, n, col);
        let idx = idx.indices();
        for i in 1..=n {
            let s = sign(i % 2 == 0);
            for x in 0..d {
                j[..i - 1].copy_from_slice(&idx[..i - 1]);
                j[i - 1] = x;
                j[i..].copy_from_slice(&idx[i - 1..]);
                scatter(&mut out, m, flat_position(d, &j), &s, Some(&r.rho_l()[x]), &u);
            }
        }
        let s = sign(n.is_multiple_of(2));
        for x in 0..d {
            j[..n].copy_from_slice(idx);
            j[n] = x;
            scatter(&mut out, m, flat_position(d, &j), &s, Some(&r.rho_r()[x]), &u);
        }
        // slot q of f holds the bracket [x_i, x_k] with k = q + 2 and i <= q + 1
        for (q, &c) in idx.iter().enumerate() {
            for &(x, y, coef) in &producers[c] {
                for i in 1..=q + 1 {
                    let s = &sign(i % 2 == 1) * coef;
                    j[..i - 1].copy_from_slice(&idx[..i - 1]);
                    j[i - 1] = x;
                    j[i..=n].copy_from_slice(&idx[i - 1..]);
                    j[q + 1] = y;
                    scatter(&mut out, m, flat_position(d, &j), &s, None, &u);
                }
            }
        }
    }
    Cochain::from_coordinates(m, d, n + 1, &out).expect("shape by construction")
}

/// Subset weight `w(r)`: `1` for `r = 0`, `-(-λ)^{(r-1)/2}` for odd `r`,
/// `(-λ)^{r/2}` for even `r >= 2`.
pub fn subset_weight(r: usize, weight: &Scalar) -> Scalar {
    let neg = -weight.clone();
    if r == 0 {
        Scalar::one()
    } else if r % 2 == 1 {
        -neg.pow(((r - 1) / 2) as u32)
    } else {
        neg.pow((r / 2) as u32)
    }
}

/// The chain map `Φ^n` from the Leibniz complex of `(g, V)` to the
/// complex of the derived algebra with the induced representation:
///
/// ```text
/// Φf(x_1..x_n) = Σ_{S ⊆ {1..n}} w(|S|) P_S f(a_1, .., a_n)
/// ```
///
/// where `a_t = x_t` for `t ∈ S` and `K x_t` otherwise, and `P_S = K_V` for
/// odd `|S|`, identity for even `|S|`. For `n = 1` this is `f∘K - K_V∘f`; for
/// `n = 2` it is `f(Kx,Ky) - K_V(f(Kx,y) + f(x,Ky)) - λ f(x,y)`.
///
/// The even-size weights differ from the closed form sometimes quoted for
/// this map (which applies `K_V` with weight `(-λ)^{r/2+1}`); that variant
/// does not commute with the differentials, these weights do.
pub fn apply_phi(ctx: &OperatorContext, k_v: &Matrix, f: &Cochain) -> Cochain {
    let d = f.algebra_dim();
    let m = f.dim_v();
    let n = f.degree();
    let k = &ctx.operator;
    // the entries K[i][j] != 0 in each row i: f(.., K e_j, ..) picks up e_i
    let rows: Vec<Vec<(usize, &Scalar)>> = (0..d)
        .map(|i| {
            (0..d)
                .filter(|&j| !k[(i, j)].is_zero())
                .map(|j| (j, &k[(i, j)]))
                .collect()
        })
        .collect();
    let weights: Vec<Scalar> = (0..=n).map(|r| subset_weight(r, &ctx.weight)).collect();
    let mut out = vec![Scalar::zero(); m * count(d, n)];
    let mut j = vec![0usize; n];
    for col in 0..count(d, n) {
        let u = f.values().column(col);
        if u.iter().all(Scalar::is_zero) {
            continue;
        }
        let idx = MultiIndex::from_flat(d, n, col);
        let idx = idx.indices();
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if weights[size].is_zero() {
                continue;
            }
            let kv = (size % 2 == 1).then_some(k_v);
            let open: Vec<usize> = (0..n).filter(|t| mask & (1 << t) == 0).collect();
            if open.iter().any(|&t| rows[idx[t]].is_empty()) {
                continue;
            }
            j.copy_from_slice(idx);
            let mut pick = vec![0usize; open.len()];
            loop {
                let mut c = weights[size].clone();
                for (p, &t) in open.iter().enumerate() {
                    let (jt, e) = rows[idx[t]][pick[p]];
                    j[t] = jt;
                    c = &c * e;
                }
                scatter(&mut out, m, flat_position(d, &j), &c, kv, &u);
                let mut p = open.len();
                loop {
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                    pick[p] += 1;
                    if pick[p] < rows[idx[open[p]]].len() {
                        break;
                    }
                    pick[p] = 0;
                }
                if pick.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    Cochain::from_coordinates(m, d, n, &out).expect("shape by construction")
}
