use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;

use crate::combinat::catalan;
use crate::{Error, Result};

/// Counts the colored plane trees of the balanced mixed moment
/// `W_AB^{u_1} W_AC^{d_1} ⋯ W_AB^{u_q} W_AC^{d_q}` at `c = 1` by the root-run
/// peel recursions (one per letter), with base cases: the empty word counts 1
/// and single-letter words count Catalan numbers. Must agree with
/// [`super::limit_moment_two_chain`].
pub fn tree_count_recursive(u: &[u64], d: &[u64]) -> Result<BigUint> {
    if u.len() != d.len() {
        return Err(Error::InvalidWord(
            "exponent vectors must have equal length".into(),
        ));
    }
    let total: u64 = u.iter().chain(d.iter()).sum();
    if total > 16 {
        return Err(Error::CapExceeded {
            what: "tree recursion",
            requested: total as usize,
            cap: 16,
        });
    }
    let mut counter = TreeCounter::default();
    Ok(counter.count(&Word::from_pairs(u, d)))
}

/// A cyclic run-length word: alternating `(AB-run, AC-run)` pairs with zero
/// runs merged away. `pairs` is empty for the empty word; a single-letter
/// word is `(total, 0)` or `(0, total)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Word {
    pairs: Vec<(u64, u64)>,
}

impl Word {
    fn from_pairs(u: &[u64], d: &[u64]) -> Word {
        Word {
            pairs: u.iter().copied().zip(d.iter().copied()).collect(),
        }
        .normalized()
    }

    /// Merges runs across zero separators (cyclically) and rotates to the
    /// lexicographically smallest form.
    fn normalized(&self) -> Word {
        let total_u: u64 = self.pairs.iter().map(|p| p.0).sum();
        let total_d: u64 = self.pairs.iter().map(|p| p.1).sum();
        if total_u == 0 || total_d == 0 {
            return Word {
                pairs: if total_u + total_d == 0 {
                    vec![]
                } else {
                    vec![(total_u, total_d)]
                },
            };
        }
        // Flatten to a cyclic run list and re-merge adjacent equal letters.
        let mut runs: Vec<(bool, u64)> = Vec::new(); // (is_ac, len)
        for &(ur, dr) in &self.pairs {
            if ur > 0 {
                runs.push((false, ur));
            }
            if dr > 0 {
                runs.push((true, dr));
            }
        }
        let mut merged: Vec<(bool, u64)> = Vec::new();
        for run in runs {
            match merged.last_mut() {
                Some(last) if last.0 == run.0 => last.1 += run.1,
                _ => merged.push(run),
            }
        }
        // Cyclic wrap merge.
        if merged.len() > 1 && merged[0].0 == merged.last().unwrap().0 {
            let last = merged.pop().unwrap();
            merged[0].1 += last.1;
        }
        // Rotate to start at an AB run, then pair (AB, AC).
        let start = merged
            .iter()
            .position(|r| !r.0)
            .expect("mixed word has an AB run");
        merged.rotate_left(start);
        let pairs: Vec<(u64, u64)> = merged
            .chunks(2)
            .map(|ch| {
                debug_assert!(!ch[0].0 && ch.len() == 2 && ch[1].0, "runs must alternate");
                (ch[0].1, ch[1].1)
            })
            .collect();
        // Canonical cyclic rotation for memoization.
        let min_rotation = (0..pairs.len())
            .map(|r| {
                let mut rotated = pairs.clone();
                rotated.rotate_left(r);
                rotated
            })
            .min()
            .unwrap();
        Word {
            pairs: min_rotation,
        }
    }

    fn is_single_letter(&self) -> bool {
        self.pairs.len() <= 1 && self.pairs.iter().all(|&(u, d)| u == 0 || d == 0)
    }

    fn us(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    fn ds(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Swapping the two letters and rotating gives the mirrored word
    /// `(u, d) -> (d_1..d_q; u_2..u_q, u_1)`, which has the same tree count.
    fn letter_swapped(&self) -> Word {
        let us = self.us();
        let ds = self.ds();
        let q = us.len();
        let mut new_d: Vec<u64> = Vec::with_capacity(q);
        for i in 0..q {
            new_d.push(us[(i + 1) % q]);
        }
        Word::from_pairs(&ds, &new_d)
    }
}

#[derive(Default)]
struct TreeCounter {
    memo: HashMap<Word, BigUint>,
}

impl TreeCounter {
    fn count(&mut self, word: &Word) -> BigUint {
        if word.pairs.is_empty() {
            return BigUint::one();
        }
        if word.is_single_letter() {
            let (u, d) = word.pairs[0];
            return catalan(u + d);
        }
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        // Reduce whichever letter has the smaller total, so both peel
        // recursions are exercised.
        let total_u: u64 = word.pairs.iter().map(|p| p.0).sum();
        let total_d: u64 = word.pairs.iter().map(|p| p.1).sum();
        let value = if total_d <= total_u {
            self.peel_last_ac(&word.us(), &word.ds())
        } else {
            // AC-side peel on the letter-swapped word.
            let swapped = word.letter_swapped();
            self.peel_last_ac(&swapped.us(), &swapped.ds())
        };
        self.memo.insert(word.clone(), value.clone());
        value
    }

    /// Peels one letter off the final AC run of `AB^{u_1} AC^{d_1} ⋯ AC^{d_q}`
    /// (requires `d_q >= 1`): the peeled letter either closes with an AC
    /// letter of an earlier run, splitting the word in two, or closes within
    /// the final run, detaching a pure Catalan factor.
    fn peel_last_ac(&mut self, u: &[u64], d: &[u64]) -> BigUint {
        let q = u.len();
        debug_assert!(d[q - 1] >= 1, "nothing to peel");
        let remaining = d[q - 1] - 1;
        let mut total = BigUint::zero();
        // Close with run `cut-1` (0-based), splitting into two words.
        for cut in 1..q {
            for s in 0..d[cut - 1] {
                let first_u = u[..cut].to_vec();
                let mut first_d = d[..cut - 1].to_vec();
                first_d.push(s);
                let second_u = u[cut..].to_vec();
                let mut second_d = d[cut..q - 1].to_vec();
                second_d.push(remaining + d[cut - 1] - s);
                total += self.count(&Word::from_pairs(&first_u, &first_d))
                    * self.count(&Word::from_pairs(&second_u, &second_d));
            }
        }
        // Close within the final run: a Catalan factor splits off.
        for s in 0..=remaining {
            let mut inner_d = d[..q - 1].to_vec();
            inner_d.push(s);
            total += self.count(&Word::from_pairs(u, &inner_d)) * catalan(remaining - s);
        }
        total
    }
}
