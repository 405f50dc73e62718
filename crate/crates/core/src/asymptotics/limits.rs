use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

use super::LimitMoment;
use crate::combinat::{catalan, mobius_nc, nc_partitions, Permutation, SetPartition};
use crate::maps::{OneBlackVertexMap, UnfoldedMap};
use crate::moments::{alt, alt_cyclic, Letter, MarginalWord};
use crate::{Error, Result};

/// Marčenko-Pastur moment `Σ_{α ∈ NC(p)} c^{#α}` as a polynomial in `c`.
pub fn mp_moment(p: usize) -> Result<LimitMoment> {
    let mut out = LimitMoment::zero();
    for pi in nc_partitions(p)? {
        out.add(pi.block_count() as u32, 0, BigUint::one());
    }
    Ok(out)
}

/// Balanced 4-partite limit `Σ_{α ∈ NC(p), α <= ker f} c^{#α}`.
///
/// Computed both over non-crossing partitions (refinement against `ker f`)
/// and over planar maps with vanishing white-vertex duplication; the two
/// routes are asserted equal.
pub fn limit_moment_balanced4(letters: &[Letter]) -> Result<LimitMoment> {
    let p = letters.len();
    let kernel = SetPartition::kernel(letters);
    let word = MarginalWord::four_partite(letters)?;

    let mut nc_route = LimitMoment::zero();
    let mut map_route = LimitMoment::zero();
    for pi in nc_partitions(p)? {
        if pi.as_set_partition().refines(&kernel) {
            nc_route.add(pi.block_count() as u32, 0, BigUint::one());
        }
        let alpha = pi.geodesic_permutation();
        if UnfoldedMap::build(&word, &alpha).delta() == 0 {
            map_route.add(alpha.cycle_count() as u32, 0, BigUint::one());
        }
    }
    assert_eq!(
        nc_route, map_route,
        "partition and map formulations disagree for {letters:?}"
    );
    Ok(nc_route)
}

/// Unbalanced 4-partite limit `Σ_{α ∈ NC(p)} c^{#α} m^{-alt(f, α)}`.
pub fn limit_moment_unbalanced4(letters: &[Letter]) -> Result<LimitMoment> {
    let mut out = LimitMoment::zero();
    for pi in nc_partitions(letters.len())? {
        let alpha = pi.geodesic_permutation();
        out.add(
            pi.block_count() as u32,
            alt(letters, &alpha) as i64,
            BigUint::one(),
        );
    }
    Ok(out)
}

/// Limiting free cumulant of the unbalanced 4-partite regime:
/// `κ(x_{f(1)}, .., x_{f(p)}) = c m^{-alt(f)}`.
pub fn free_cumulant_unbalanced4(letters: &[Letter]) -> LimitMoment {
    LimitMoment::term(1, alt_cyclic(letters) as i64, 1)
}

/// Expands the free cumulants over non-crossing partitions
/// (`Σ_π Π_{B ∈ π} κ(f|_B)`); must reproduce
/// [`limit_moment_unbalanced4`].
pub fn moment_from_cumulants_unbalanced4(letters: &[Letter]) -> Result<LimitMoment> {
    let mut out = LimitMoment::zero();
    for pi in nc_partitions(letters.len())? {
        let mut m_neg = 0i64;
        for block in pi.as_set_partition().blocks() {
            let sub: Vec<Letter> = block.iter().map(|&i| letters[i]).collect();
            m_neg += alt_cyclic(&sub) as i64;
        }
        out.add(pi.block_count() as u32, m_neg, BigUint::one());
    }
    Ok(out)
}

/// Multiplicative Catalan extension `Cat_σ(r) = Π_{B ∈ σ} Cat_{Σ_{i∈B} r_i}`.
fn catalan_multiplicative(partition: &SetPartition, values: &[u64]) -> BigUint {
    partition
        .blocks()
        .iter()
        .map(|block| catalan(block.iter().map(|&i| values[i]).sum()))
        .product()
}

/// The 2-chain expansion of the balanced mixed moments at `c = 1`:
/// `Σ_{σ <= π ∈ NC(q)} Cat_σ(r) Cat_{Kr(π)}(s) Mob(σ, π)` for the word
/// `W_AB^{r_q} W_AC^{s_q} ⋯ W_AB^{r_1} W_AC^{s_1}`.
pub fn limit_moment_two_chain(r: &[u64], s: &[u64]) -> Result<BigInt> {
    let q = r.len();
    if q != s.len() || q == 0 {
        return Err(Error::InvalidWord(
            "exponent vectors must be nonempty and equal length".into(),
        ));
    }
    if q > 8 {
        return Err(Error::CapExceeded {
            what: "2-chain expansion",
            requested: q,
            cap: 8,
        });
    }
    let ncs = nc_partitions(q)?;
    let mut total = BigInt::zero();
    for pi in &ncs {
        let kr = pi.kreweras();
        let cat_s = BigInt::from(catalan_multiplicative(kr.as_set_partition(), s));
        for sigma in &ncs {
            if !sigma.refines(pi) {
                continue;
            }
            let cat_r = BigInt::from(catalan_multiplicative(sigma.as_set_partition(), r));
            total += cat_r * &cat_s * mobius_nc(sigma, pi)?;
        }
    }
    Ok(total)
}

/// Survival predicate of the balanced general regime for permuted marginals:
/// planar and both the subset word and the permutation word constant on the
/// white vertices.
fn survives_balanced_general(word: &MarginalWord, alpha: &Permutation) -> Result<bool> {
    let kernel = word.kernel_f().meet(&word.kernel_pi()?);
    let blocks = SetPartition::from_blocks(alpha.len(), alpha.cycles())
        .expect("cycles partition the positions");
    Ok(blocks.refines(&kernel))
}

/// Number of planar maps on which both the kept sets and the leg permutations
/// are constant per white vertex — the balanced general limit with all
/// `c_i = 1`.
pub fn balanced_general_count(word: &MarginalWord) -> Result<BigUint> {
    let mut count = BigUint::zero();
    for pi in nc_partitions(word.len())? {
        if survives_balanced_general(word, &pi.geodesic_permutation())? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// Balanced general limit with per-color constants `c_i` (`N_i ~ c_i N`):
/// the surviving maps weighted by the product of constants they carry.
/// Moving colors must share one constant.
pub fn limit_moment_balanced_general(word: &MarginalWord, cs: &[f64]) -> Result<f64> {
    if cs.len() != word.color_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} constants, got {}",
            word.color_count(),
            cs.len()
        )));
    }
    if cs.iter().any(|&c| c <= 0.0 || !c.is_finite()) {
        return Err(Error::RegimeMismatch("constants must be positive".into()));
    }
    let moving = word.moving_colors();
    if moving.windows(2).any(|w| cs[w[0]] != cs[w[1]]) {
        return Err(Error::DimensionMismatch(
            "moving colors must share one constant".into(),
        ));
    }
    let p = word.len();
    let mut total = 0.0;
    for pi in nc_partitions(p)? {
        let alpha = pi.geodesic_permutation();
        if !survives_balanced_general(word, &alpha)? {
            continue;
        }
        let whites = alpha.cycle_count() as i32;
        let faces = (p as i32 + 1) - whites; // planar
        let mut weight = 1.0;
        for &c in word.fixed_colors() {
            weight *= cs[c].powi(faces);
        }
        for &c in word.traced_colors() {
            weight *= cs[c].powi(whites);
        }
        if word.k() > 0 {
            let l_exp = UnfoldedMap::build(word, &alpha).l_exponent() as i32;
            weight *= cs[moving[0]].powi(l_exp);
        }
        total += weight;
    }
    Ok(total)
}

/// Dominant-map classification when more than half the colors are kept:
/// minimizes `2 l g(M) + L̃(f, σ, M) + (2k + 2l - n)(V(M) - 2)` over `M_p`
/// and returns the minimum with all minimizing maps.
pub fn regime_exponent_mu(word: &MarginalWord) -> Result<(u64, Vec<OneBlackVertexMap>)> {
    let l = word.fixed_colors().len() as i64;
    let k = word.k() as i64;
    let n = word.color_count() as i64;
    let coeff = 2 * k + 2 * l - n;
    if coeff < 0 {
        return Err(Error::RegimeMismatch(format!(
            "2(k + l) - n = {coeff} < 0: fewer than half the colors kept"
        )));
    }
    let mut best: Option<u64> = None;
    let mut argmin: Vec<OneBlackVertexMap> = Vec::new();
    for alpha in crate::combinat::all_permutations(word.len())? {
        let map = OneBlackVertexMap::new(alpha.clone());
        let unfolded = UnfoldedMap::build(word, &alpha);
        let term = 2 * l as u64 * map.genus() as u64
            + unfolded.tilde_l() as u64
            + coeff as u64 * (map.vertex_count() as u64 - 2);
        match best {
            Some(b) if term > b => {}
            Some(b) if term == b => argmin.push(map),
            _ => {
                best = Some(term);
                argmin = vec![map];
            }
        }
    }
    Ok((best.expect("S_p is nonempty"), argmin))
}

/// Unbalanced general limit (as many growing traced colors as fixed ones):
///
/// `Σ_{M planar} c^{V(M)-1} m^{(|moving| - 2k)(V(M)-1) - L̃(f, σ, M)}`,
///
/// i.e. the moments of `W / (N^l m^{k p + V•})` up to the `N` normalization.
/// `declared_moving` may list additional never-kept colors whose dimension is
/// `m` rather than `~ c N` (needed when a word does not visit every
/// `m`-sized color).
pub fn limit_moment_unbalanced_general(
    word: &MarginalWord,
    declared_moving: Option<&[usize]>,
) -> Result<LimitMoment> {
    let mut moving: BTreeSet<usize> = word.moving_colors().iter().copied().collect();
    if let Some(extra) = declared_moving {
        for &c in extra {
            if word.fixed_colors().contains(&c) {
                return Err(Error::RegimeMismatch(format!(
                    "color {c} is a common fixed point, not an m-sized color"
                )));
            }
            moving.insert(c);
        }
    }
    let l = word.fixed_colors().len();
    let growing_traced = word
        .traced_colors()
        .iter()
        .filter(|c| !moving.contains(c))
        .count();
    if growing_traced != l {
        return Err(Error::RegimeMismatch(format!(
            "unbalanced regime needs as many growing traced colors as fixed ones \
             (got {growing_traced} traced vs {l} fixed)"
        )));
    }
    let k = word.k() as i64;
    let moving_total = moving.len() as i64;
    let mut out = LimitMoment::zero();
    for pi in nc_partitions(word.len())? {
        let alpha = pi.geodesic_permutation();
        let whites = alpha.cycle_count() as i64;
        let tilde_l = UnfoldedMap::build(word, &alpha).tilde_l() as i64;
        let m_negpower = tilde_l - (moving_total - 2 * k) * whites;
        out.add(whites as u32, m_negpower, BigUint::one());
    }
    Ok(out)
}

/// Canonical completion of the partial color bijection `σ_a : J_a -> J_{a+1}`
/// to a permutation of the ambient moving color set: the single missing
/// pre-image is paired with the single missing image. Returned on the indices
/// of `ambient` (sorted).
pub fn phi_completion(word: &MarginalWord, a: usize, ambient: &[usize]) -> Result<Permutation> {
    let mut ambient = ambient.to_vec();
    ambient.sort_unstable();
    let rank = |c: usize| ambient.binary_search(&c);
    let mut images = vec![usize::MAX; ambient.len()];
    let mut used: Vec<bool> = vec![false; ambient.len()];
    for &c in word.jset(a) {
        let img = word.sigma_color(a, c).expect("kept color");
        let (src, dst) = (
            rank(c).map_err(|_| ambient_err(c))?,
            rank(img).map_err(|_| ambient_err(img))?,
        );
        images[src] = dst;
        used[dst] = true;
    }
    let missing_src: Vec<usize> = (0..ambient.len())
        .filter(|&i| images[i] == usize::MAX)
        .collect();
    let missing_dst: Vec<usize> = (0..ambient.len()).filter(|&i| !used[i]).collect();
    if missing_src.len() != 1 || missing_dst.len() != 1 {
        return Err(Error::RegimeMismatch(format!(
            "completion needs exactly one missing color, found {}",
            missing_src.len()
        )));
    }
    images[missing_src[0]] = missing_dst[0];
    Permutation::from_images(images)
}

fn ambient_err(c: usize) -> Error {
    Error::RegimeMismatch(format!("color {c} not in the ambient moving set"))
}
