//! Permutations, set partitions, the non-crossing partition lattice and the
//! classical count sequences used by the moment engines.
//!
//! All index sets are `{0, .., p-1}`. The distinguished full cycle is
//! `gamma(i) = i + 1 mod p`, matching a trace of `p` factors labeled from the
//! rightmost factor (position 0) upwards.

mod counting;
mod partition;
mod permutation;

pub use counting::{binomial, catalan, fuss_catalan_2};
pub use partition::{mobius_nc, nc_partitions, set_partitions, NCPartition, SetPartition};
pub use permutation::{all_permutations, Permutation};

/// Cap on exhaustive `S_p` enumeration (`8! = 40320` keeps scans sub-second).
pub const PERMUTATION_ENUM_CAP: usize = 8;

/// Cap on non-crossing / set-partition enumeration.
pub const PARTITION_ENUM_CAP: usize = 12;
