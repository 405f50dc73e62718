use num_bigint::BigUint;
use num_traits::One;

use super::{MarginalWord, MomentPolynomial, VarClass, VariableLegend};
use crate::combinat::all_permutations;
use crate::maps::UnionFind;
use crate::{Error, Result};

/// Cap for the brute-force oracle; `2pn` leg nodes per diagram.
pub const ORACLE_CAP: usize = 6;

/// Brute-force Wick oracle: builds, for each pairing `α ∈ S_p`, the wiring
/// graph of the `2p` tensor boxes (`2pn` legs) and counts monochromatic-class
/// loops with union-find. Shares no code with the cycle/genus formulas of
/// [`super::exact_moment`]; the two must agree exactly.
pub fn wick_oracle_moment(word: &MarginalWord) -> Result<MomentPolynomial> {
    let p = word.len();
    if p > ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "Wick oracle",
            requested: p,
            cap: ORACLE_CAP,
        });
    }
    let n = word.color_count();
    // Leg nodes: X-box legs first, then conjugate-box legs.
    let x_leg = |a: usize, c: usize| a * n + c;
    let xbar_leg = |a: usize, c: usize| p * n + a * n + c;

    // Initial wiring: kept legs chain box `a` to conjugate box `a+1` through
    // the twist; the other legs are traced inside their own factor.
    let mut initial = UnionFind::new(2 * p * n);
    for a in 0..p {
        let kept = &word.subsets()[a];
        for &c in kept.iter() {
            let c_next = word.sigma_color(a, c).expect("kept color");
            initial.union(x_leg(a, c), xbar_leg((a + 1) % p, c_next));
        }
        for c in 0..n {
            if kept.binary_search(&c).is_err() {
                initial.union(x_leg(a, c), xbar_leg(a, c));
            }
        }
    }

    // Color -> legend class index.
    let legend = VariableLegend::for_word(word);
    let mut class_of_color = vec![usize::MAX; n];
    for (idx, class) in legend.classes().iter().enumerate() {
        match class {
            VarClass::Fixed(c) | VarClass::Traced(c) => class_of_color[*c] = idx,
            VarClass::Moving(colors) => {
                for &c in colors {
                    class_of_color[c] = idx;
                }
            }
        }
    }

    let mut poly = MomentPolynomial::zero(legend.clone());
    for alpha in all_permutations(p)? {
        let mut uf = initial.clone();
        for a in 0..p {
            #[allow(clippy::needless_range_loop)]
            for c in 0..n {
                uf.union(xbar_leg(a, c), x_leg(alpha.image(a), c));
            }
        }
        // Classify each loop by the class of its colors (loops never mix
        // classes: twists only move colors within the moving class).
        let mut exponents = vec![0u32; legend.arity()];
        let mut seen_roots = std::collections::HashMap::new();
        for a in 0..2 * p {
            for (c, &class) in class_of_color.iter().enumerate() {
                let root = uf.find(a * n + c);
                match seen_roots.entry(root) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(class);
                        exponents[class] += 1;
                    }
                    std::collections::hash_map::Entry::Occupied(e) => {
                        debug_assert_eq!(*e.get(), class, "loop mixes variable classes");
                    }
                }
            }
        }
        poly.add_term(exponents, BigUint::one());
    }
    Ok(poly)
}
