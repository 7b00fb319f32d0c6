use rayon::prelude::*;

use super::{is_mrb, LeibnizAlgebra, OperatorContext};
use crate::linalg::{Matrix, Scalar};
use crate::{Error, Result};

pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;

/// Per-entry pattern for operator search: `Some(v)` pins the entry to `v`,
/// `None` lets it range over the grid. Entries are row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMask {
    dim: usize,
    entries: Vec<Option<Scalar>>,
}

impl EntryMask {
    pub fn new(dim: usize, entries: Vec<Option<Scalar>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "mask has {} entries, expected {}",
                entries.len(),
                dim * dim
            )));
        }
        Ok(EntryMask { dim, entries })
    }

    pub fn free(dim: usize) -> Self {
        EntryMask {
            dim,
            entries: vec![None; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Option<Scalar>] {
        &self.entries
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.entries.len()).filter(|&p| self.entries[p].is_none()).collect()
    }
}

/// Exhaustive search for modified Rota-Baxter operators with entries drawn
/// from a finite grid.
#[derive(Debug, Clone)]
pub struct GridSearch {
    pub budget: u128,
}

impl Default for GridSearch {
    fn default() -> Self {
        GridSearch {
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl GridSearch {
    /// Returns every candidate with an empty modified Rota-Baxter defect, in
    /// lexicographic order: row-major free entries, first entry most
    /// significant, grid values in the given order. Repeated grid values are
    /// collapsed to their first occurrence.
    pub fn run(
        &self,
        a: &LeibnizAlgebra,
        weight: &Scalar,
        grid: &[Scalar],
        mask: Option<&EntryMask>,
    ) -> Result<Vec<Matrix>> {
        let d = a.dim();
        let free_mask;
        let mask = match mask {
            Some(m) => {
                if m.dim() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "mask dimension {} on algebra of dimension {d}",
                        m.dim()
                    )));
                }
                m
            }
            None => {
                free_mask = EntryMask::free(d);
                &free_mask
            }
        };
        let mut values: Vec<Scalar> = Vec::new();
        for g in grid {
            if !values.contains(g) {
                values.push(g.clone());
            }
        }
        let free = mask.free_positions();
        let required = (values.len() as u128)
            .checked_pow(free.len() as u32)
            .unwrap_or(u128::MAX);
        if required > self.budget {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        if required == 0 {
            return Ok(Vec::new());
        }
        let base: Vec<Scalar> = mask.entries().iter().map(|e| e.clone().unwrap_or_default()).collect();
        let n = values.len() as u64;
        let candidate = |mut idx: u64| -> Matrix {
            let mut entries = base.clone();
            for &p in free.iter().rev() {
                entries[p] = values[(idx % n) as usize].clone();
                idx /= n;
            }
            Matrix::from_fn(d, d, |r, c| entries[r * d + c].clone())
        };
        let found = (0..required as u64)
            .into_par_iter()
            .filter_map(|idx| {
                let k = candidate(idx);
                let ctx = OperatorContext::new(k, weight.clone());
                is_mrb(a, &ctx).then_some(ctx.operator)
            })
            .collect();
        Ok(found)
    }
}

/// [`GridSearch::run`] with the default budget.
pub fn grid_search_operators(
    a: &LeibnizAlgebra,
    weight: &Scalar,
    grid: &[Scalar],
    mask: Option<&EntryMask>,
) -> Result<Vec<Matrix>> {
    GridSearch::default().run(a, weight, grid, mask)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn zero_grid_gives_zero_matrix() {
        let out = grid_search_operators(&lie2(), &s(0), &[s(0)], None).unwrap();
        assert_eq!(out, vec![Matrix::zeros(2, 2)]);
        let out = grid_search_operators(&g3(), &s(0), &[s(0)], None).unwrap();
        assert_eq!(out, vec![Matrix::zeros(3, 3)]);
    }

    #[test]
    fn masked_search_finds_k0() {
        let mut entries = vec![Some(s(0)); 9];
        entries[0] = None;
        entries[8] = None;
        let mask = EntryMask::new(3, entries).unwrap();
        let out = grid_search_operators(&g3(), &s(1), &[s(0), s(1)], Some(&mask)).unwrap();
        assert!(out.contains(&k0().operator));
    }

    #[test]
    fn budget_is_enforced() {
        let search = GridSearch { budget: 511 };
        assert!(matches!(
            search.run(&g3(), &s(0), &[s(0), s(1)], None),
            Err(Error::BudgetExceeded {
                required: 512,
                budget: 511
            })
        ));
    }

    #[test]
    fn order_is_lexicographic() {
        let out = grid_search_operators(&g3(), &s(0), &[s(0), s(1)], None).unwrap();
        let keys: Vec<Vec<Scalar>> = out.iter().map(|m| m.entries().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
