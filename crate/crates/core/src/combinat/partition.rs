use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;

use super::{catalan, Permutation, PARTITION_ENUM_CAP};
use crate::{Error, Result};

/// A partition of `{0, .., p-1}` into disjoint nonempty blocks.
///
/// Canonical form: blocks sorted ascending internally and ordered by their
/// minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: usize,
    blocks: Vec<Vec<usize>>,
}

impl std::fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partition{:?}", self.blocks)
    }
}

impl SetPartition {
    pub fn from_blocks(ground: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &e in &block {
                if e >= ground || seen[e] {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} repeated or out of range 0..{ground}"
                    )));
                }
                seen[e] = true;
            }
            canonical.push(block);
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition(
                "blocks do not cover the ground set".into(),
            ));
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(SetPartition {
            ground,
            blocks: canonical,
        })
    }

    /// Partition of positions by equal labels (the kernel `ker f` of a word).
    pub fn kernel<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut groups: HashMap<&T, Vec<usize>> = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        SetPartition {
            ground: labels.len(),
            blocks,
        }
    }

    pub fn discrete(p: usize) -> Self {
        SetPartition {
            ground: p,
            blocks: (0..p).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(p: usize) -> Self {
        SetPartition {
            ground: p,
            blocks: vec![(0..p).collect()],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `block_index()[e]` is the index of the block containing `e`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.ground];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                idx[e] = b;
            }
        }
        idx
    }

    /// Refinement order: every block of `self` is contained in a block of
    /// `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        assert_eq!(
            self.ground, other.ground,
            "partitions on different ground sets"
        );
        let other_idx = other.block_index();
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&e| other_idx[e] == other_idx[block[0]]))
    }

    /// Common refinement (lattice meet).
    pub fn meet(&self, other: &SetPartition) -> SetPartition {
        let a = self.block_index();
        let b = other.block_index();
        let keys: Vec<(usize, usize)> = (0..self.ground).map(|e| (a[e], b[e])).collect();
        SetPartition::kernel(&keys)
    }
}

/// Enumerates all `Bell(p)` partitions via restricted growth strings.
pub fn set_partitions(p: usize) -> Result<Vec<SetPartition>> {
    if p > PARTITION_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "set partition enumeration",
            requested: p,
            cap: PARTITION_ENUM_CAP,
        });
    }
    if p == 0 {
        return Ok(vec![SetPartition {
            ground: 0,
            blocks: vec![],
        }]);
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; p];
    loop {
        let nblocks = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        out.push(SetPartition { ground: p, blocks });
        // next restricted growth string
        let mut i = p - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let max_prefix = rgs[..i].iter().max().copied().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// A non-crossing partition of `{0, .., p-1}`.
///
/// Non-crossing: no `a < b < c < d` with `a, c` in one block and `b, d` in
/// another. These are in bijection with the geodesic permutations between the
/// identity and the full cycle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCPartition {
    partition: SetPartition,
}

impl std::fmt::Debug for NCPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NC{:?}", self.partition.blocks)
    }
}

impl NCPartition {
    pub fn new(partition: SetPartition) -> Result<Self> {
        if !is_noncrossing(&partition) {
            return Err(Error::InvalidPartition(format!(
                "{partition:?} has crossing blocks"
            )));
        }
        Ok(NCPartition { partition })
    }

    pub fn from_blocks(ground: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(SetPartition::from_blocks(ground, blocks)?)
    }

    pub fn discrete(p: usize) -> Self {
        NCPartition {
            partition: SetPartition::discrete(p),
        }
    }

    pub fn one_block(p: usize) -> Self {
        NCPartition {
            partition: SetPartition::one_block(p),
        }
    }

    pub fn as_set_partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn ground_size(&self) -> usize {
        self.partition.ground
    }

    pub fn block_count(&self) -> usize {
        self.partition.block_count()
    }

    pub fn refines(&self, other: &NCPartition) -> bool {
        self.partition.refines(&other.partition)
    }

    /// The geodesic permutation whose cycles are the blocks, each traversed in
    /// decreasing cyclic order (the convention under which `#α + #(γ∘α)`
    /// attains `p + 1`).
    pub fn geodesic_permutation(&self) -> Permutation {
        let p = self.partition.ground;
        let mut images: Vec<usize> = (0..p).collect();
        for block in &self.partition.blocks {
            // block sorted ascending: send each element to its predecessor
            for w in 0..block.len() {
                let src = block[w];
                let dst = block[(w + block.len() - 1) % block.len()];
                images[src] = dst;
            }
        }
        Permutation::from_images(images).expect("block cycles form a permutation")
    }

    /// Inverse of [`Self::geodesic_permutation`]; fails on non-geodesic input.
    pub fn from_geodesic(perm: &Permutation) -> Result<Self> {
        if !perm.is_geodesic() {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not geodesic"
            )));
        }
        Ok(Self::from_cycles_unchecked(perm))
    }

    /// Builds the partition whose blocks are the cycles of `perm`, without the
    /// geodesic check. The result is only guaranteed non-crossing for
    /// geodesic input.
    pub(crate) fn from_cycles_unchecked(perm: &Permutation) -> Self {
        let blocks = perm.cycles();
        NCPartition {
            partition: SetPartition::from_blocks(perm.len(), blocks)
                .expect("cycles partition the ground set"),
        }
    }

    /// Kreweras complement, the lattice anti-automorphism of `NC(p)`.
    ///
    /// Computed as the cycle partition of `α ∘ γ` for the geodesic
    /// representative `α`; this agrees with the interleaved
    /// `0, 0̄, 1, 1̄, ...` construction and satisfies
    /// `#π + #Kr(π) == p + 1`.
    pub fn kreweras(&self) -> NCPartition {
        let p = self.partition.ground;
        let gamma = Permutation::full_cycle(p);
        let kr_perm = self.geodesic_permutation().compose(&gamma);
        let out = Self::from_cycles_unchecked(&kr_perm);
        debug_assert!(is_noncrossing(&out.partition));
        out
    }
}

/// Arc-crossing test: two within-block arcs `(x1, y1)`, `(x2, y2)` cross iff
/// `x1 < x2 < y1 < y2`.
fn is_noncrossing(partition: &SetPartition) -> bool {
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for block in partition.blocks() {
        for w in 0..block.len().saturating_sub(1) {
            arcs.push((block[w], block[w + 1]));
        }
    }
    for (i, &(x1, y1)) in arcs.iter().enumerate() {
        for &(x2, y2) in &arcs[i + 1..] {
            let (a1, b1, a2, b2) = if x1 <= x2 {
                (x1, y1, x2, y2)
            } else {
                (x2, y2, x1, y1)
            };
            if a1 < a2 && a2 < b1 && b1 < b2 {
                return false;
            }
        }
    }
    true
}

/// Enumerates `NC(p)`; the count is the Catalan number.
pub fn nc_partitions(p: usize) -> Result<Vec<NCPartition>> {
    if p > PARTITION_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "non-crossing partition enumeration",
            requested: p,
            cap: PARTITION_ENUM_CAP,
        });
    }
    let shapes = nc_shapes(p);
    Ok(shapes
        .into_iter()
        .map(|blocks| NCPartition {
            partition: SetPartition::from_blocks(p, blocks).expect("generator emits partitions"),
        })
        .collect())
}

/// Recursive generator: the block of the smallest element splits the rest
/// into independent consecutive segments.
fn nc_shapes(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // `mask` selects which of 1..n join the block of 0.
    for mask in 0..(1u32 << (n - 1)) {
        let mut block = vec![0usize];
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                block.push(bit + 1);
            }
        }
        // Segments between consecutive block members (and after the last).
        let mut segments: Vec<(usize, usize)> = Vec::new();
        for w in 0..block.len() {
            let lo = block[w] + 1;
            let hi = if w + 1 < block.len() { block[w + 1] } else { n };
            if lo < hi {
                segments.push((lo, hi));
            } else if lo > hi {
                unreachable!("block members are increasing");
            }
        }
        // Cartesian product of the sub-partitions of each segment.
        let mut partials: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
        for &(lo, hi) in &segments {
            let sub = nc_shapes(hi - lo);
            let mut next = Vec::with_capacity(partials.len() * sub.len());
            for base in &partials {
                for sub_part in &sub {
                    let mut combined = base.clone();
                    for sub_block in sub_part {
                        combined.push(sub_block.iter().map(|&e| e + lo).collect());
                    }
                    next.push(combined);
                }
            }
            partials = next;
        }
        out.append(&mut partials);
    }
    out
}

/// Möbius function of the non-crossing partition lattice for `sigma <= pi`:
/// the product over the cycles of `σ⁻¹π` (geodesic representatives) of
/// `(-1)^{len-1} Catalan(len-1)`.
pub fn mobius_nc(sigma: &NCPartition, pi: &NCPartition) -> Result<BigInt> {
    if sigma.ground_size() != pi.ground_size() {
        return Err(Error::NotComparable);
    }
    if !sigma.refines(pi) {
        return Err(Error::NotComparable);
    }
    let rel = sigma
        .geodesic_permutation()
        .inverse()
        .compose(&pi.geodesic_permutation());
    let mut acc = BigInt::one();
    for cycle in rel.cycles() {
        let len = cycle.len() as u64;
        let mut factor = BigInt::from(catalan(len - 1));
        if (len - 1) % 2 == 1 {
            factor = -factor;
        }
        acc *= factor;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::all_permutations;
    use num_traits::ToPrimitive;

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(1).unwrap().len(), 1);
        assert_eq!(set_partitions(3).unwrap().len(), 5);
        assert_eq!(set_partitions(4).unwrap().len(), 15);
        assert!(set_partitions(13).is_err());
    }

    #[test]
    fn nc_counts_are_catalan() {
        assert_eq!(nc_partitions(1).unwrap().len(), 1);
        assert_eq!(nc_partitions(3).unwrap().len(), 5);
        assert_eq!(nc_partitions(6).unwrap().len(), 132);
    }

    #[test]
    fn refinement_examples() {
        let p = 3;
        let discrete = SetPartition::discrete(p);
        let full = SetPartition::one_block(p);
        for part in set_partitions(p).unwrap() {
            assert!(discrete.refines(&part));
            assert!(part.refines(&full));
        }
        let a = SetPartition::from_blocks(3, vec![vec![0, 2], vec![1]]).unwrap();
        let b = SetPartition::from_blocks(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(!a.refines(&b));
    }

    #[test]
    fn meet_is_greatest_lower_bound() {
        for a in set_partitions(4).unwrap() {
            for b in set_partitions(4).unwrap() {
                let m = a.meet(&b);
                assert!(m.refines(&a) && m.refines(&b));
                for c in set_partitions(4).unwrap() {
                    if c.refines(&a) && c.refines(&b) {
                        assert!(c.refines(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn geodesic_bijection_roundtrip() {
        // Inverse-consistent on all of NC(p) and the geodesic count in S_p is
        // Catalan(p); permutation-side scan up to the S_p cap.
        for p in 1..=7 {
            let ncs = nc_partitions(p).unwrap();
            for nc in &ncs {
                let perm = nc.geodesic_permutation();
                assert!(perm.is_geodesic(), "representative of {nc:?} not geodesic");
                assert_eq!(&NCPartition::from_geodesic(&perm).unwrap(), nc);
                assert_eq!(perm.cycle_count(), nc.block_count());
            }
            let geodesics = all_permutations(p)
                .unwrap()
                .into_iter()
                .filter(|a| a.is_geodesic())
                .count();
            assert_eq!(geodesics, ncs.len(), "geodesic count != Catalan({p})");
        }
    }

    #[test]
    fn kreweras_examples() {
        for p in 1..=7 {
            let top = NCPartition::one_block(p);
            assert_eq!(top.kreweras(), NCPartition::discrete(p));
            assert_eq!(NCPartition::discrete(p).kreweras(), top);
        }
        let pi = NCPartition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let kr = pi.kreweras();
        assert_eq!(
            kr,
            NCPartition::from_blocks(4, vec![vec![0], vec![1, 3], vec![2]]).unwrap()
        );
        assert_eq!(pi.block_count() + kr.block_count(), 5);
    }

    #[test]
    fn kreweras_block_count_identity() {
        for p in 1..=7 {
            for pi in nc_partitions(p).unwrap() {
                assert_eq!(pi.block_count() + pi.kreweras().block_count(), p + 1);
            }
        }
    }

    /// The interleaved characterization: placing `π` on even points and
    /// `Kr(π)` on odd points of `0, 0̄, 1, 1̄, ...` yields a non-crossing
    /// partition of `2p` points.
    #[test]
    fn kreweras_interleaved_union_is_noncrossing() {
        for p in 1..=6 {
            for pi in nc_partitions(p).unwrap() {
                let kr = pi.kreweras();
                let mut blocks: Vec<Vec<usize>> = pi
                    .as_set_partition()
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&e| 2 * e).collect())
                    .collect();
                blocks.extend(
                    kr.as_set_partition()
                        .blocks()
                        .iter()
                        .map(|b| b.iter().map(|&e| 2 * e + 1).collect::<Vec<_>>()),
                );
                let union = SetPartition::from_blocks(2 * p, blocks).unwrap();
                assert!(is_noncrossing(&union), "union crosses for {pi:?}");
            }
        }
    }

    #[test]
    fn mobius_examples() {
        let pi = NCPartition::from_blocks(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(mobius_nc(&pi, &pi).unwrap(), BigInt::from(1));
        assert_eq!(
            mobius_nc(&NCPartition::discrete(2), &NCPartition::one_block(2)).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            mobius_nc(&NCPartition::discrete(3), &NCPartition::one_block(3)).unwrap(),
            BigInt::from(2)
        );
        // not comparable
        let a = NCPartition::from_blocks(3, vec![vec![0, 1], vec![2]]).unwrap();
        let b = NCPartition::from_blocks(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(mobius_nc(&a, &b).is_err());
    }

    /// Defining property: sum of `Mob(τ, π)` over `σ <= τ <= π` is `[σ == π]`.
    #[test]
    fn mobius_defining_property() {
        for p in 1..=5 {
            let ncs = nc_partitions(p).unwrap();
            for sigma in &ncs {
                for pi in &ncs {
                    if !sigma.refines(pi) {
                        continue;
                    }
                    let mut total = BigInt::from(0);
                    for tau in &ncs {
                        if sigma.refines(tau) && tau.refines(pi) {
                            total += mobius_nc(tau, pi).unwrap();
                        }
                    }
                    let expected = if sigma == pi { 1 } else { 0 };
                    assert_eq!(total.to_i64().unwrap(), expected);
                }
            }
        }
    }
}
