use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{MarginalWord, MomentPolynomial, VarClass, VariableLegend};
use crate::combinat::{all_permutations, Permutation};
use crate::maps::UnfoldedMap;
use crate::Result;

/// Exponent vector of one Wick permutation: `#(γ∘α)` for each fixed color,
/// the unfolded-map exponent `L` for the moving class, `#α` for each traced
/// color.
fn exponents_for(word: &MarginalWord, legend: &VariableLegend, alpha: &Permutation) -> Vec<u32> {
    let gamma = Permutation::full_cycle(word.len());
    let faces = gamma.compose(alpha).cycle_count() as u32;
    let whites = alpha.cycle_count() as u32;
    let mut moving_exponent = None;
    legend
        .classes()
        .iter()
        .map(|class| match class {
            VarClass::Fixed(_) => faces,
            VarClass::Traced(_) => whites,
            VarClass::Moving(_) => *moving_exponent
                .get_or_insert_with(|| UnfoldedMap::build(word, alpha).l_exponent() as u32),
        })
        .collect()
}

/// The exact mixed moment `E Tr ·σ W_f` as a polynomial in the color
/// dimensions: a sum over all Wick permutations of `S_p`.
pub fn exact_moment(word: &MarginalWord) -> Result<MomentPolynomial> {
    let legend = VariableLegend::for_word(word);
    let perms = all_permutations(word.len())?;
    let poly = perms
        .par_iter()
        .fold(
            || MomentPolynomial::zero(legend.clone()),
            |mut acc, alpha| {
                acc.add_term(exponents_for(word, &legend, alpha), BigUint::one());
                acc
            },
        )
        .reduce(
            || MomentPolynomial::zero(legend.clone()),
            |mut a, b| {
                a.merge(b);
                a
            },
        );
    Ok(poly)
}

/// Exact moment evaluated at an explicit dimension profile.
pub fn exact_moment_evaluated(word: &MarginalWord, dims: &[u64]) -> Result<BigUint> {
    word.validate_dims(dims)?;
    exact_moment(word)?.evaluate(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::parse_letters;
    use num_traits::ToPrimitive;

    #[test]
    fn bipartite_second_moment() {
        let word = MarginalWord::bipartite(2).unwrap();
        let poly = exact_moment(&word).unwrap();
        assert_eq!(poly.canonical_string(), "N M^2 + N^2 M");
    }

    #[test]
    fn four_partite_ab_ac() {
        let word = MarginalWord::four_partite(&parse_letters("AB,AC").unwrap()).unwrap();
        let poly = exact_moment(&word).unwrap();
        assert_eq!(
            poly.canonical_string(),
            "N_A N_{B,C}^3 N_D^2 + N_A^2 N_{B,C} N_D"
        );
        assert_eq!(
            poly.evaluate(&[8, 4, 4, 8]).unwrap().to_u64().unwrap(),
            8 * 64 * 64 + 64 * 4 * 8
        );
    }

    #[test]
    fn single_letter_word_matches_reshaped_wishart() {
        // Tr W_AB of the 4-partite tensor equals Tr W of the bipartite
        // reshaping with N = N_A N_B and M = N_C N_D.
        let word = MarginalWord::four_partite(&[crate::moments::Letter::AB]).unwrap();
        let value = exact_moment_evaluated(&word, &[3, 4, 4, 5]).unwrap();
        assert_eq!(value.to_u64().unwrap(), (3 * 4) * (4 * 5));
    }

    #[test]
    fn dims_validation_errors() {
        let word = MarginalWord::four_partite(&parse_letters("AB,AC").unwrap()).unwrap();
        assert!(exact_moment_evaluated(&word, &[2, 2, 3, 2]).is_err());
    }
}
