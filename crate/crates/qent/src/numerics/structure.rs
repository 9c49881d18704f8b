use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tensor factorization of a Hilbert space: an ordered list of local
/// dimensions `[d_1, ..., d_k]`.
///
/// The composite index convention is row-major with factor 0 slowest:
/// `i = Σ_j i_j · (d_{j+1} · d_{j+2} ⋯ d_k)`. This matches the Kronecker
/// product convention of [`ComplexMatrix::kron`](super::ComplexMatrix::kron),
/// so tensor products, partial traces, and partial transposes all agree on
/// which factor is which.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorStructure {
    dims: Vec<usize>,
}

impl TensorStructure {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Argument("tensor structure needs ≥ 1 factor".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Argument("factor dimensions must be ≥ 1".into()));
        }
        Ok(Self { dims })
    }

    pub fn bipartite(d_a: usize, d_b: usize) -> Result<Self> {
        Self::new(vec![d_a, d_b])
    }

    /// `n` factors of equal dimension `d`.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    /// All factors share one dimension; returns it.
    pub fn uniform_dim(&self) -> Option<usize> {
        let d = self.dims[0];
        self.dims.iter().all(|&x| x == d).then_some(d)
    }

    /// Stride of each factor in the composite index.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.dims.len()];
        for j in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.dims[j + 1];
        }
        strides
    }

    /// Validate a factor index subset: in range, no duplicates. Returns the
    /// subset sorted ascending (factor order is always preserved).
    pub(crate) fn checked_subset(&self, factors: &[usize]) -> Result<Vec<usize>> {
        if factors.is_empty() {
            return Err(Error::Argument("factor subset must be nonempty".into()));
        }
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != factors.len() {
            return Err(Error::Argument("duplicate factor index".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&f| f >= self.dims.len()) {
            return Err(Error::Argument(format!(
                "factor index {bad} out of range for {} factors",
                self.dims.len()
            )));
        }
        Ok(sorted)
    }

    /// Structure restricted to the given (validated, sorted) factors.
    pub fn substructure(&self, factors: &[usize]) -> Result<Self> {
        let sorted = self.checked_subset(factors)?;
        Self::new(sorted.iter().map(|&f| self.dims[f]).collect())
    }

    /// Composite indices of the subspace spanned by `factors`, pre-mapped
    /// into the full space with all other factor digits at zero. Adding an
    /// entry of the complement's table gives a full composite index.
    pub(crate) fn embedding_table(&self, factors: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let sub_dims: Vec<usize> = factors.iter().map(|&f| self.dims[f]).collect();
        let sub_total: usize = sub_dims.iter().product();
        let mut table = vec![0usize; sub_total];
        for (idx, entry) in table.iter_mut().enumerate() {
            let mut rem = idx;
            let mut full = 0usize;
            // Decompose idx over sub_dims (row-major), land each digit on
            // its stride in the full space.
            for (pos, &f) in factors.iter().enumerate() {
                let later: usize = sub_dims[pos + 1..].iter().product();
                let digit = rem / later;
                rem %= later;
                full += digit * strides[f];
            }
            *entry = full;
        }
        table
    }
}
