use super::Letter;
use crate::combinat::Permutation;

/// The moving-color loop count of a 4-partite word, directly from the wiring
/// permutations on the `2p` points `(a, B), (a, C)`:
/// `L(f, α) = #(γ̂_f ∘ α̂)`.
///
/// Point indexing: `(a, B) = a`, `(a, C) = p + a`.
pub fn l_exponent_4partite(letters: &[Letter], alpha: &Permutation) -> usize {
    let p = letters.len();
    assert_eq!(alpha.len(), p);
    let next = |a: usize| (a + 1) % p;

    let mut hat_gamma = vec![0usize; 2 * p];
    for a in 0..p {
        // (a, B)
        hat_gamma[a] = match (letters[a], letters[next(a)]) {
            (Letter::AC, _) => a,
            (Letter::AB, Letter::AB) => next(a),
            (Letter::AB, Letter::AC) => p + next(a),
        };
        // (a, C)
        hat_gamma[p + a] = match (letters[a], letters[next(a)]) {
            (Letter::AB, _) => p + a,
            (Letter::AC, Letter::AB) => next(a),
            (Letter::AC, Letter::AC) => p + next(a),
        };
    }
    let hat_gamma = Permutation::from_images(hat_gamma).expect("γ̂_f is a bijection");

    let mut hat_alpha = vec![0usize; 2 * p];
    for a in 0..p {
        hat_alpha[a] = alpha.image(a);
        hat_alpha[p + a] = p + alpha.image(a);
    }
    let hat_alpha = Permutation::from_images(hat_alpha).expect("α̂ is a bijection");

    hat_gamma.compose(&hat_alpha).cycle_count()
}

/// Number of positions whose letter changes along `α`:
/// `alt(f, α) = |{a : f(a) != f(α(a))}|`.
pub fn alt(letters: &[Letter], alpha: &Permutation) -> usize {
    (0..letters.len())
        .filter(|&a| letters[a] != letters[alpha.image(a)])
        .count()
}

/// Cyclic letter-change count `alt(f) = alt(f, γ)`.
pub fn alt_cyclic(letters: &[Letter]) -> usize {
    alt(letters, &Permutation::full_cycle(letters.len()))
}

/// All `2^p` words over `{AB, AC}` of length `p`.
pub fn all_words(p: usize) -> Vec<Vec<Letter>> {
    (0..(1u32 << p))
        .map(|bits| {
            (0..p)
                .map(|i| {
                    if bits & (1 << i) != 0 {
                        Letter::AC
                    } else {
                        Letter::AB
                    }
                })
                .collect()
        })
        .collect()
}
