use rayon::prelude::*;

use super::{delta_unchecked, ConeCochain, MrbComplex};
use crate::algebra::{require_leibniz, LeibnizAlgebra, OperatorContext};
use crate::linalg::{count, kernel_basis, rank, solve, Matrix, Scalar};
use crate::rep::{require_rep, Representation};
use crate::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: usize = 3;

/// Largest differential, in matrix cells, that a computation may build
/// unless the caller raises the budget.
pub const DEFAULT_CELL_BUDGET: u128 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyOptions {
    pub degree_bound: usize,
    pub cell_budget: u128,
    pub representatives: bool,
}

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions {
            degree_bound: DEFAULT_DEGREE_BOUND,
            cell_budget: DEFAULT_CELL_BUDGET,
            representatives: false,
        }
    }
}

impl CohomologyOptions {
    fn admit(&self, max_degree: usize, cells: u128) -> Result<()> {
        if max_degree > self.degree_bound {
            return Err(Error::DegreeBound {
                requested: max_degree,
                bound: self.degree_bound,
            });
        }
        if cells > self.cell_budget {
            return Err(Error::BudgetExceeded {
                required: cells,
                budget: self.cell_budget,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// Per-degree dimensions of one complex. When requested, `representatives`
/// holds for each degree a list of cocycle coordinate vectors whose classes
/// form a basis of the cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSummary {
    pub degrees: Vec<DegreeSummary>,
    pub representatives: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl ComplexSummary {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|s| s.cohomology).collect()
    }

    /// From the differentials `D^0..D^N`.
    fn from_differentials(diffs: &[Matrix], representatives: bool) -> Self {
        let ranks: Vec<usize> = diffs.par_iter().map(rank).collect();
        let degrees = diffs
            .iter()
            .enumerate()
            .map(|(n, dn)| {
                let cocycles = dn.cols() - ranks[n];
                let coboundaries = if n == 0 { 0 } else { ranks[n - 1] };
                DegreeSummary {
                    degree: n,
                    cochains: dn.cols(),
                    cocycles,
                    coboundaries,
                    cohomology: cocycles - coboundaries,
                }
            })
            .collect();
        let representatives = representatives.then(|| {
            (0..diffs.len())
                .map(|n| cohomology_basis(&diffs[n], n.checked_sub(1).map(|p| &diffs[p])))
                .collect()
        });
        ComplexSummary {
            degrees,
            representatives,
        }
    }
}

/// Kernel vectors of `dn` extending the image of `prev` to a basis of the
/// kernel, chosen greedily in kernel-basis order.
fn cohomology_basis(dn: &Matrix, prev: Option<&Matrix>) -> Vec<Vec<Scalar>> {
    let mut span = prev.cloned().unwrap_or_else(|| Matrix::zeros(dn.cols(), 0));
    let mut r = rank(&span);
    let mut out = Vec::new();
    for v in kernel_basis(dn) {
        let wider = span.hstack(&Matrix::column_vector(&v));
        let rw = rank(&wider);
        if rw > r {
            span = wider;
            r = rw;
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub max_degree: usize,
    pub leibniz: ComplexSummary,
    pub operator: Option<ComplexSummary>,
    pub cone: Option<ComplexSummary>,
}

fn cells(rows: usize, cols: usize) -> u128 {
    rows as u128 * cols as u128
}

/// Cohomology of the Leibniz, operator and cone complexes in degrees
/// `0..=max_degree`.
pub fn cohomology_dimensions(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    max_degree: usize,
    options: &CohomologyOptions,
) -> Result<CohomologyReport> {
    let (m, d) = (r.dim_v(), a.dim());
    let leib = |n: usize| m * count(d, n);
    let prev = if max_degree == 0 { 0 } else { leib(max_degree - 1) };
    options.admit(
        max_degree,
        cells(leib(max_degree + 1) + leib(max_degree), leib(max_degree) + prev),
    )?;
    let cx = MrbComplex::new(a, ctx, r)?;
    cx.report(max_degree, options.representatives)
}

/// Cohomology of the Leibniz complex alone, for a representation without
/// an operator.
pub fn leibniz_cohomology(
    a: &LeibnizAlgebra,
    r: &Representation,
    max_degree: usize,
    options: &CohomologyOptions,
) -> Result<CohomologyReport> {
    r.check_against(a)?;
    let (m, d) = (r.dim_v(), a.dim());
    options.admit(
        max_degree,
        cells(m * count(d, max_degree + 1), m * count(d, max_degree)),
    )?;
    require_leibniz(a)?;
    require_rep(a, r)?;
    let diffs: Vec<Matrix> = (0..=max_degree).map(|n| delta_unchecked(a, r, n)).collect();
    Ok(CohomologyReport {
        max_degree,
        leibniz: ComplexSummary::from_differentials(&diffs, options.representatives),
        operator: None,
        cone: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub cocycle: bool,
    pub coboundary: bool,
    /// A preimage under the previous cone differential, when one exists.
    /// Degree 0 has no previous differential, so the zero cochain is a
    /// coboundary without a witness.
    pub witness: Option<ConeCochain>,
}

/// Decides whether a cone cochain is a cocycle and whether it is a
/// coboundary.
pub fn classify_cochain(
    a: &LeibnizAlgebra,
    ctx: &OperatorContext,
    r: &Representation,
    c: &ConeCochain,
) -> Result<Classification> {
    MrbComplex::new(a, ctx, r)?.classify(c)
}

impl MrbComplex {
    fn check_cochain(&self, c: &ConeCochain) -> Result<()> {
        if c.leib.dim_v() != self.dim_v() || c.leib.algebra_dim() != self.algebra_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cochain with values in dimension {} on algebra dimension {}, expected {} and {}",
                c.leib.dim_v(),
                c.leib.algebra_dim(),
                self.dim_v(),
                self.algebra_dim()
            )));
        }
        Ok(())
    }

    pub fn report(&self, max_degree: usize, representatives: bool) -> Result<CohomologyReport> {
        let degrees: Vec<usize> = (0..=max_degree).collect();
        let (leib, (op, cone)) = rayon::join(
            || degrees.par_iter().map(|&n| self.delta(n)).collect::<Vec<_>>(),
            || {
                rayon::join(
                    || degrees.par_iter().map(|&n| self.partial(n)).collect::<Vec<_>>(),
                    || degrees.par_iter().map(|&n| self.cone(n)).collect::<Vec<_>>(),
                )
            },
        );
        Ok(CohomologyReport {
            max_degree,
            leibniz: ComplexSummary::from_differentials(&leib, representatives),
            operator: Some(ComplexSummary::from_differentials(&op, representatives)),
            cone: Some(ComplexSummary::from_differentials(&cone, representatives)),
        })
    }

    /// Cone cohomology dimensions computed from δ, ∂ and Φ separately,
    /// without forming the cone differential. With `Z = ker δ^n` and
    /// `B = im ∂^{n-1}`:
    ///
    /// ```text
    /// dim ker d^n = dim Z - (rank[B | Φ^n Z] - rank B) + dim ker ∂^{n-1}
    /// ```
    pub fn cone_dims_blockwise(&self, max_degree: usize) -> Vec<usize> {
        let kernels: Vec<usize> = (0..=max_degree)
            .into_par_iter()
            .map(|n| {
                let z = kernel_basis(&self.delta(n));
                let phi_z = if z.is_empty() {
                    Matrix::zeros(self.leib_dim(n), 0)
                } else {
                    self.phi(n).mul(&Matrix::from_columns(self.leib_dim(n), &z))
                };
                if n == 0 {
                    return z.len() - rank(&phi_z);
                }
                let b = self.partial(n - 1);
                let rank_b = rank(&b);
                z.len() - (rank(&b.hstack(&phi_z)) - rank_b) + (b.cols() - rank_b)
            })
            .collect();
        (0..=max_degree)
            .map(|n| {
                let image_prev = if n == 0 {
                    0
                } else {
                    self.cone_dim(n - 1) - kernels[n - 1]
                };
                kernels[n] - image_prev
            })
            .collect()
    }

    pub fn classify(&self, c: &ConeCochain) -> Result<Classification> {
        self.check_cochain(c)?;
        let n = c.degree();
        if n > DEFAULT_DEGREE_BOUND {
            return Err(Error::DegreeBound {
                requested: n,
                bound: DEFAULT_DEGREE_BOUND,
            });
        }
        let cocycle = self.apply_cone(c).is_zero();
        if n == 0 {
            return Ok(Classification {
                cocycle,
                coboundary: c.is_zero(),
                witness: None,
            });
        }
        let (m, d) = (self.dim_v(), self.algebra_dim());
        let witness = solve(&self.cone(n - 1), &c.coordinates())
            .map(|x| ConeCochain::from_coordinates(m, d, n - 1, &x).expect("witness shape"));
        Ok(Classification {
            cocycle,
            coboundary: witness.is_some(),
            witness,
        })
    }
}
