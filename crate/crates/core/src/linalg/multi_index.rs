/// A tuple `(i_1, ..., i_n)` of 0-based basis indices in `0..dim`.
///
/// The flat position is `Σ i_t · dim^(n-t)`: the leftmost index is most
/// significant, and positions enumerate `0..dim^n` bijectively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    dim: usize,
    indices: Vec<usize>,
}

impl MultiIndex {
    pub fn new(dim: usize, indices: Vec<usize>) -> Self {
        assert!(indices.iter().all(|&i| i < dim), "index out of range");
        MultiIndex { dim, indices }
    }

    pub fn from_flat(dim: usize, arity: usize, mut pos: usize) -> Self {
        let mut indices = vec![0; arity];
        for slot in indices.iter_mut().rev() {
            *slot = pos % dim;
            pos /= dim;
        }
        MultiIndex { dim, indices }
    }

    pub fn flat(&self) -> usize {
        flat_position(self.dim, &self.indices)
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// 1-based rendering used in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    /// All multi-indices of the given arity, in flat order.
    pub fn all(dim: usize, arity: usize) -> impl Iterator<Item = MultiIndex> {
        (0..count(dim, arity)).map(move |p| MultiIndex::from_flat(dim, arity, p))
    }
}

pub fn flat_position(dim: usize, indices: &[usize]) -> usize {
    indices.iter().fold(0, |acc, &i| acc * dim + i)
}

/// `dim^arity`
pub fn count(dim: usize, arity: usize) -> usize {
    dim.pow(arity as u32)
}
