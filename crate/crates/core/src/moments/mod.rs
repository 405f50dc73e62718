//! Exact finite-dimension mixed moments of marginals as multivariate
//! polynomials, plus the independent brute-force Wick/loop-counting oracle.
//!
//! Everything here is exact big-integer arithmetic; no floating point.

mod exact;
mod fourpartite;
mod oracle;
mod polynomial;
mod pq;
mod word;

pub use exact::{exact_moment, exact_moment_evaluated};
pub use fourpartite::{all_words, alt, alt_cyclic, l_exponent_4partite};
pub use oracle::{wick_oracle_moment, ORACLE_CAP};
pub use polynomial::{
    MomentPolynomial, NormalizedMomentSeries, TermRecord, VarClass, VariableLegend,
};
pub use pq::{exact_moment_p_and_q, PQ_CAP};
pub use word::{parse_letters, Letter, MarginalWord};

use crate::combinat::Permutation;
use crate::maps::UnfoldedMap;
use crate::{Error, Result};

/// `L̃(f, σ, M) = 2 (g(M_{f,σ}) + Δ_{f,σ}(M) + Σ(M_{f,σ}))`, the nonnegative
/// deficit that suppresses a Wick term in the fixed-moving-dimension regimes.
pub fn tilde_l(word: &MarginalWord, alpha: &Permutation) -> usize {
    UnfoldedMap::build(word, alpha).tilde_l()
}

/// Per-color dimensions `N_1, .., N_n` of the tensor factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionProfile {
    dims: Vec<u64>,
}

impl DimensionProfile {
    pub fn new(dims: Vec<u64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(
                "dimension profile must be nonempty and positive".into(),
            ));
        }
        Ok(DimensionProfile { dims })
    }

    pub fn color_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, color: usize) -> u64 {
        self.dims[color]
    }

    pub fn total_entries(&self) -> u128 {
        self.dims.iter().map(|&d| d as u128).product()
    }
}
