use crate::combinat::{Permutation, SetPartition};
use crate::{Error, Result};

/// Letter of a 4-partite marginal word: which 2-marginal of the `ABCD` tensor
/// a factor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    AB,
    AC,
}

impl std::str::FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "AB" | "ab" => Ok(Letter::AB),
            "AC" | "ac" => Ok(Letter::AC),
            other => Err(Error::InvalidWord(format!("unknown letter {other:?}"))),
        }
    }
}

/// Parses a comma-separated 4-partite word such as `"AB,AC,AB"`.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.split(',').map(|t| t.parse()).collect()
}

/// A mixed-moment descriptor: the trace
/// `Tr ·σ_p W_{I_p} ·σ_{p-1} … ·σ_1 W_{I_1}` of `p` (possibly permuted,
/// overlapping) marginals, with factors labeled right to left from position 0.
///
/// `subsets[a]` is the kept color set `I_a` (0-based colors, sorted) and
/// `sigmas[a]` the twist between positions `a` and `a+1 mod p`, acting on
/// positions `0..card` through the order-preserving identification of `I_a`
/// with `{0..card-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginalWord {
    n: usize,
    subsets: Vec<Vec<usize>>,
    sigmas: Vec<Permutation>,
    pis: Option<Vec<Permutation>>,
    // derived color classes
    fixed: Vec<usize>,
    traced: Vec<usize>,
    moving: Vec<usize>,
    jsets: Vec<Vec<usize>>,
}

impl MarginalWord {
    /// General form: kept subsets plus explicit twists.
    pub fn general(n: usize, subsets: Vec<Vec<usize>>, sigmas: Vec<Permutation>) -> Result<Self> {
        Self::build(n, subsets, sigmas, None)
    }

    /// Permuted-marginal form `W_{I_a, π_a}`: all `|I_a| = n/2` and the twists
    /// factorize as `σ_a = π_{a+1}⁻¹ ∘ π_a`.
    pub fn permuted(n: usize, subsets: Vec<Vec<usize>>, pis: Vec<Permutation>) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidWord(
                "permuted-marginal words need an even color count".into(),
            ));
        }
        if subsets.iter().any(|s| s.len() != n / 2) {
            return Err(Error::InvalidWord(
                "permuted-marginal words need |I_a| = n/2".into(),
            ));
        }
        if pis.len() != subsets.len() {
            return Err(Error::InvalidWord("one π per position required".into()));
        }
        let p = subsets.len();
        let sigmas = (0..p)
            .map(|a| pis[(a + 1) % p].inverse().compose(&pis[a]))
            .collect();
        Self::build(n, subsets, sigmas, Some(pis))
    }

    /// The word `f ∈ {AB, AC}^p` over the 4-partite `ABCD` tensor with colors
    /// `A=0, B=1, C=2, D=3` and trivial twists.
    pub fn four_partite(letters: &[Letter]) -> Result<Self> {
        let subsets = letters
            .iter()
            .map(|l| match l {
                Letter::AB => vec![0, 1],
                Letter::AC => vec![0, 2],
            })
            .collect();
        let sigmas = vec![Permutation::identity(2); letters.len()];
        Self::build(4, subsets, sigmas, None)
    }

    /// The bipartite Wishart word of length `p` (colors `N = 0`, `M = 1`).
    pub fn bipartite(p: usize) -> Result<Self> {
        Self::build(2, vec![vec![0]; p], vec![Permutation::identity(1); p], None)
    }

    fn build(
        n: usize,
        subsets: Vec<Vec<usize>>,
        sigmas: Vec<Permutation>,
        pis: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        let p = subsets.len();
        if p == 0 {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if sigmas.len() != p {
            return Err(Error::InvalidWord("one twist per position required".into()));
        }
        let mut subsets = subsets;
        for s in subsets.iter_mut() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || *s.last().unwrap() >= n {
                return Err(Error::InvalidWord(format!(
                    "kept set {s:?} invalid for {n} colors"
                )));
            }
        }
        let card = subsets[0].len();
        if subsets.iter().any(|s| s.len() != card) {
            return Err(Error::InvalidWord(
                "kept sets must share a cardinality".into(),
            ));
        }
        if sigmas.iter().any(|s| s.len() != card) {
            return Err(Error::InvalidWord(format!(
                "twists must act on {card} positions"
            )));
        }

        let mut word = MarginalWord {
            n,
            subsets,
            sigmas,
            pis,
            fixed: vec![],
            traced: vec![],
            moving: vec![],
            jsets: vec![],
        };
        word.classify_colors();
        Ok(word)
    }

    /// Splits colors into the common fixed points of all twists, the colors
    /// traced in every factor, and the moving colors in between; `J_a` is
    /// `I_a` minus the fixed colors.
    fn classify_colors(&mut self) {
        let p = self.len();
        let in_all =
            |c: usize| -> bool { self.subsets.iter().all(|s| s.binary_search(&c).is_ok()) };
        let in_none =
            |c: usize| -> bool { self.subsets.iter().all(|s| s.binary_search(&c).is_err()) };
        for c in 0..self.n {
            if in_all(c) && (0..p).all(|a| self.sigma_color(a, c) == Some(c)) {
                self.fixed.push(c);
            } else if in_none(c) {
                self.traced.push(c);
            } else {
                self.moving.push(c);
            }
        }
        self.jsets = self
            .subsets
            .iter()
            .map(|s| {
                s.iter()
                    .copied()
                    .filter(|c| self.fixed.binary_search(c).is_err())
                    .collect()
            })
            .collect();
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn color_count(&self) -> usize {
        self.n
    }

    /// Cardinality shared by every kept set.
    pub fn card(&self) -> usize {
        self.subsets[0].len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigmas
    }

    pub fn pis(&self) -> Option<&[Permutation]> {
        self.pis.as_deref()
    }

    /// Colors kept by every factor and fixed by every twist.
    pub fn fixed_colors(&self) -> &[usize] {
        &self.fixed
    }

    /// Colors traced in every factor.
    pub fn traced_colors(&self) -> &[usize] {
        &self.traced
    }

    /// Moving colors (neither fixed nor always traced); their dimensions
    /// must agree.
    pub fn moving_colors(&self) -> &[usize] {
        &self.moving
    }

    /// `J_a = I_a` minus the fixed colors.
    pub fn jset(&self, a: usize) -> &[usize] {
        &self.jsets[a]
    }

    /// Per-edge moving color count `k = card - l`, constant across positions.
    pub fn k(&self) -> usize {
        self.card() - self.fixed.len()
    }

    /// Image of color `c ∈ I_a` under the twist into `I_{a+1}`, through the
    /// order-preserving identifications. `None` if `c ∉ I_a`.
    pub fn sigma_color(&self, a: usize, c: usize) -> Option<usize> {
        let pos = self.subsets[a].binary_search(&c).ok()?;
        let next = (a + 1) % self.len();
        Some(self.subsets[next][self.sigmas[a].image(pos)])
    }

    /// Kernel of the subset word: positions with equal `I_a` share a block.
    pub fn kernel_f(&self) -> SetPartition {
        SetPartition::kernel(&self.subsets)
    }

    /// Kernel of the `π` word (permuted-marginal form only).
    pub fn kernel_pi(&self) -> Result<SetPartition> {
        let pis = self.pis.as_ref().ok_or_else(|| {
            Error::InvalidWord("word was not built from permuted marginals".into())
        })?;
        Ok(SetPartition::kernel(pis))
    }

    /// The 4-partite letters, when this word is one (colors `{0,1}`/`{0,2}`
    /// of a 4-color tensor with trivial twists).
    pub fn as_four_partite(&self) -> Option<Vec<Letter>> {
        if self.n != 4 || self.pis.is_some() {
            return None;
        }
        if !self.sigmas.iter().all(|s| s.is_identity()) {
            return None;
        }
        self.subsets
            .iter()
            .map(|s| match s.as_slice() {
                [0, 1] => Some(Letter::AB),
                [0, 2] => Some(Letter::AC),
                _ => None,
            })
            .collect()
    }

    /// Whether this is the plain bipartite Wishart word.
    pub fn is_bipartite(&self) -> bool {
        self.n == 2 && self.subsets.iter().all(|s| s.as_slice() == [0])
    }

    /// Checks a dimension profile against this word: one dimension per color,
    /// all moving colors sharing a common value.
    pub fn validate_dims(&self, dims: &[u64]) -> Result<()> {
        if dims.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} dimensions, got {}",
                self.n,
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::DimensionMismatch(
                "dimensions must be positive".into(),
            ));
        }
        if let Some((&first, rest)) = self.moving.split_first().map(|(f, r)| (&dims[*f], r)) {
            for &c in rest {
                if dims[c] != first {
                    return Err(Error::DimensionMismatch(format!(
                        "moving colors {:?} must share one dimension",
                        self.moving
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_partite_classification() {
        let w = MarginalWord::four_partite(&parse_letters("AB,AC").unwrap()).unwrap();
        assert_eq!(w.fixed_colors(), &[0]);
        assert_eq!(w.moving_colors(), &[1, 2]);
        assert_eq!(w.traced_colors(), &[3]);
        assert_eq!(w.jset(0), &[1]);
        assert_eq!(w.jset(1), &[2]);
        assert_eq!(w.k(), 1);
        assert_eq!(w.as_four_partite().unwrap(), vec![Letter::AB, Letter::AC]);
    }

    #[test]
    fn bipartite_classification() {
        let w = MarginalWord::bipartite(3).unwrap();
        assert_eq!(w.fixed_colors(), &[0]);
        assert_eq!(w.traced_colors(), &[1]);
        assert!(w.moving_colors().is_empty());
        assert_eq!(w.k(), 0);
        assert!(w.is_bipartite());
    }

    #[test]
    fn permuted_word_factorizes() {
        // n=4, I_a = {0,1} and {2,3}, π_0 = flip, π_1 = id.
        let flip = Permutation::from_images(vec![1, 0]).unwrap();
        let id = Permutation::identity(2);
        let w = MarginalWord::permuted(
            4,
            vec![vec![0, 1], vec![2, 3]],
            vec![flip.clone(), id.clone()],
        )
        .unwrap();
        // σ_0 = π_1⁻¹ π_0 = flip, σ_1 = π_0⁻¹ π_1 = flip.
        assert_eq!(w.sigmas()[0], flip);
        assert_eq!(w.sigmas()[1], flip);
        assert!(w.kernel_pi().is_ok());
    }

    #[test]
    fn sigma_color_follows_identification() {
        // I_0 = {1,2}, I_1 = {1,3}, σ_0 swaps the two positions:
        // color 1 (pos 0) -> pos 1 of I_1 = color 3.
        let w = MarginalWord::general(
            4,
            vec![vec![1, 2], vec![1, 3]],
            vec![
                Permutation::from_images(vec![1, 0]).unwrap(),
                Permutation::identity(2),
            ],
        )
        .unwrap();
        assert_eq!(w.sigma_color(0, 1), Some(3));
        assert_eq!(w.sigma_color(0, 2), Some(1));
        assert_eq!(w.sigma_color(0, 0), None);
    }

    #[test]
    fn dims_uniformity_enforced() {
        let w = MarginalWord::four_partite(&parse_letters("AB,AC").unwrap()).unwrap();
        assert!(w.validate_dims(&[8, 4, 4, 8]).is_ok());
        assert!(w.validate_dims(&[8, 4, 5, 8]).is_err());
        assert!(w.validate_dims(&[8, 4, 4]).is_err());
        assert!(w.validate_dims(&[8, 0, 0, 8]).is_err());
    }

    #[test]
    fn degenerate_single_letter_word() {
        // With p=1 the single twist wraps onto itself, so color B is a common
        // fixed point and nothing moves.
        let w = MarginalWord::four_partite(&[Letter::AB]).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.fixed_colors(), &[0, 1]);
        assert!(w.moving_colors().is_empty());
        assert_eq!(w.traced_colors(), &[2, 3]);
        assert_eq!(w.k(), 0);
    }
}
