use crate::{Error, Result};
use serde::{Deserialize, Serialize};

use super::PERMUTATION_ENUM_CAP;

/// A permutation of `{0, .., p-1}` in one-line notation: `images[i]` is the
/// image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let p = images.len();
        let mut seen = vec![false; p];
        for &v in &images {
            if v >= p || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{p}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(p: usize) -> Self {
        Permutation {
            images: (0..p).collect(),
        }
    }

    /// The full cycle `i -> i + 1 mod p`.
    pub fn full_cycle(p: usize) -> Self {
        Permutation {
            images: (0..p).map(|i| (i + 1) % p).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(p: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..p).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let src = cycle[w];
                let dst = cycle[(w + 1) % cycle.len()];
                if src >= p || dst >= p {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry out of range 0..{p}"
                    )));
                }
                images[src] = dst;
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Function composition `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different sizes"
        );
        Permutation {
            images: (0..self.len())
                .map(|i| self.images[other.images[i]])
                .collect(),
        }
    }

    /// Disjoint cycle decomposition; each cycle starts at its smallest element,
    /// cycles ordered by smallest element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let p = self.len();
        let mut seen = vec![false; p];
        let mut out = Vec::new();
        for start in 0..p {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of disjoint cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let p = self.len();
        let mut seen = vec![false; p];
        let mut count = 0;
        for start in 0..p {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        count
    }

    /// Minimal number of transpositions multiplying to `self`; equals
    /// `p - cycle_count`.
    pub fn length(&self) -> usize {
        self.len() - self.cycle_count()
    }

    /// Cayley distance `|self⁻¹ ∘ other|` in the transposition metric.
    pub fn distance(&self, other: &Permutation) -> usize {
        self.inverse().compose(other).length()
    }

    /// Whether `self` saturates the triangle inequality between the identity
    /// and the full cycle, i.e. maximizes `#α + #(γ∘α)`:
    /// `|α| + |α⁻¹γ⁻¹| = p - 1`, equivalently `#α + #(γ∘α) = p + 1`.
    ///
    /// These permutations are in bijection with non-crossing partitions; the
    /// blocks are the cycles, traversed in decreasing cyclic order. Note the
    /// one-block representative is `γ⁻¹`, not `γ`, for `p >= 3`.
    pub fn is_geodesic(&self) -> bool {
        let p = self.len();
        let gamma = Permutation::full_cycle(p);
        self.cycle_count() + gamma.compose(self).cycle_count() == p + 1
    }
}

/// Enumerates all of `S_p` in lexicographic one-line order.
pub fn all_permutations(p: usize) -> Result<Vec<Permutation>> {
    if p > PERMUTATION_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "permutation enumeration",
            requested: p,
            cap: PERMUTATION_ENUM_CAP,
        });
    }
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..p).collect();
    loop {
        out.push(Permutation {
            images: images.clone(),
        });
        // next lexicographic arrangement
        let Some(i) = (0..p.saturating_sub(1))
            .rev()
            .find(|&i| images[i] < images[i + 1])
        else {
            break;
        };
        let j = (i + 1..p).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    Ok(out)
}
