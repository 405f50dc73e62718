use num_bigint::BigUint;
use num_traits::Zero;

use super::{exact_moment, Letter, MarginalWord, NormalizedMomentSeries};
use crate::combinat::{all_permutations, Permutation};
use crate::{Error, Result};

/// Cap on the comparison moments (`P` at order `p` sums over `S_{2p}`).
pub const PQ_CAP: usize = 4;

/// Normalized moments of the marginal product `P = W_AB^{1/2} W_AC W_AB^{1/2}`
/// and of the Fuss-Catalan model `Q = X_1 X_2 X_2* X_1*`, all dimensions equal
/// to `N`:
///
/// * `E N^{-2} Tr (N^{-4} P)^p` — the alternating word of length `2p`;
/// * `E N^{-1} Tr (N^{-2} Q)^p` — the double Wick sum
///   `Σ N^{#(γα₁α₂) + #α₁ + #α₂}`.
///
/// Both are returned as polynomials in `N^{-2}`.
pub fn exact_moment_p_and_q(p: usize) -> Result<(NormalizedMomentSeries, NormalizedMomentSeries)> {
    if p == 0 || p > PQ_CAP {
        return Err(Error::CapExceeded {
            what: "P/Q comparison moments",
            requested: p,
            cap: PQ_CAP,
        });
    }

    // P: word AB,AC,AB,AC,... of length 2p.
    let letters: Vec<Letter> = (0..2 * p)
        .map(|i| if i % 2 == 0 { Letter::AB } else { Letter::AC })
        .collect();
    let word = MarginalWord::four_partite(&letters)?;
    let poly = exact_moment(&word)?;
    let top = 4 * p as u32 + 2;
    let mut p_coeffs = vec![BigUint::zero(); 1];
    for (degree, coeff) in poly.collapse_univariate() {
        let deficit = top - degree;
        debug_assert!(deficit.is_multiple_of(2), "odd normalization deficit");
        let k = (deficit / 2) as usize;
        if p_coeffs.len() <= k {
            p_coeffs.resize(k + 1, BigUint::zero());
        }
        p_coeffs[k] += coeff;
    }

    // Q: independent Wick sums for the two Ginibre factors.
    let gamma = Permutation::full_cycle(p);
    let perms = all_permutations(p)?;
    let top_q = 2 * p + 1;
    let mut q_coeffs = vec![BigUint::zero(); 1];
    for a1 in &perms {
        for a2 in &perms {
            let degree =
                gamma.compose(a1).compose(a2).cycle_count() + a1.cycle_count() + a2.cycle_count();
            let deficit = top_q - degree;
            debug_assert!(deficit.is_multiple_of(2), "odd normalization deficit");
            let k = deficit / 2;
            if q_coeffs.len() <= k {
                q_coeffs.resize(k + 1, BigUint::zero());
            }
            q_coeffs[k] += 1u32;
        }
    }

    Ok((
        NormalizedMomentSeries::from_coeffs(p_coeffs),
        NormalizedMomentSeries::from_coeffs(q_coeffs),
    ))
}
