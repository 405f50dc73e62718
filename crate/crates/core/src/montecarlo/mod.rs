//! Sampling Gaussian tensors, forming (permuted) marginals and twisted
//! traces, and estimating moments and eigenvalue histograms.
//!
//! Sampling is deterministic given `(seed, sample index)` and the reductions
//! use a fixed tree order, so estimates are bit-identical across thread
//! counts.

mod matrix;
mod rng;

pub use matrix::CMatrix;
pub use rng::{standard_complex, stream_rng, tree_sum};

use num_complex::Complex;
use num_traits::Zero;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::Permutation;
use crate::moments::{DimensionProfile, MarginalWord};
use crate::{Error, Real, Result};

/// Default cap on tensor entries (`2^24`).
pub const TENSOR_ENTRY_CAP: u128 = 1 << 24;

/// Cap on the side of matrices fed to the eigensolver.
pub const EIGEN_SIDE_CAP: usize = 512;

/// A sample of a complex Gaussian random tensor over a dimension profile,
/// entries i.i.d. with independent `N(0, 1/2)` real and imaginary parts
/// (`E |x|² = 1`). Row-major layout, color 0 slowest.
#[derive(Clone, Debug)]
pub struct GaussianTensor<T: Real> {
    dims: Vec<usize>,
    entries: Vec<Complex<T>>,
}

impl<T: Real> GaussianTensor<T>
where
    StandardNormal: Distribution<T>,
{
    /// Reproducible sample: the stream is derived from `(seed, index)`.
    pub fn sample(profile: &DimensionProfile, seed: u64, index: u64) -> Result<Self> {
        let total = profile.total_entries();
        if total > TENSOR_ENTRY_CAP {
            return Err(Error::MemoryCap {
                requested: total as usize,
                cap: TENSOR_ENTRY_CAP as usize,
            });
        }
        let mut rng = stream_rng(seed, index);
        let entries = (0..total as usize)
            .map(|_| standard_complex(&mut rng))
            .collect();
        Ok(GaussianTensor {
            dims: profile.dims().iter().map(|&d| d as usize).collect(),
            entries,
        })
    }
}

impl<T: Real> GaussianTensor<T> {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// `Σ |x|² = Tr X X*`, the trace of every marginal.
    pub fn norm_sqr(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
    }
}

/// A marginal `W_{I,π}` as a square matrix together with its tensor-leg
/// factorization. Legs are ordered by the sorted kept colors (then permuted
/// by `π` when one is given).
#[derive(Clone, Debug)]
pub struct MarginalMatrix<T: Real> {
    mat: CMatrix<T>,
    leg_colors: Vec<usize>,
    leg_dims: Vec<usize>,
}

impl<T: Real> MarginalMatrix<T> {
    pub fn matrix(&self) -> &CMatrix<T> {
        &self.mat
    }

    pub fn side(&self) -> usize {
        self.mat.side()
    }

    pub fn leg_dims(&self) -> &[usize] {
        &self.leg_dims
    }

    pub fn leg_colors(&self) -> &[usize] {
        &self.leg_colors
    }

    pub fn trace(&self) -> T {
        self.mat.trace().re
    }
}

/// Partial trace of `X X*` over the complement of `kept`, then the leg
/// permutation `π` on the kept factors (`W_{I,π} = P_π W_I P_π⁻¹`).
pub fn marginal<T: Real>(
    x: &GaussianTensor<T>,
    kept: &[usize],
    pi: Option<&Permutation>,
) -> Result<MarginalMatrix<T>> {
    let n = x.dims().len();
    let mut kept = kept.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() >= n || kept.iter().any(|&c| c >= n) {
        return Err(Error::InvalidWord(format!(
            "kept set {kept:?} must be a nonempty proper subset of the {n} colors"
        )));
    }
    if let Some(p) = pi {
        if p.len() != kept.len() {
            return Err(Error::InvalidPermutation(
                "leg permutation must act on the kept factors".into(),
            ));
        }
    }
    // Row leg b carries the kept color at position π⁻¹(b); W_{I,π}[i; i'] =
    // W_I[i∘π; i'∘π].
    let leg_colors: Vec<usize> = match pi {
        Some(p) => {
            let inv = p.inverse();
            (0..kept.len()).map(|b| kept[inv.image(b)]).collect()
        }
        None => kept.clone(),
    };
    let traced: Vec<usize> = (0..n).filter(|c| kept.binary_search(c).is_err()).collect();

    let leg_dims: Vec<usize> = leg_colors.iter().map(|&c| x.dims()[c]).collect();
    let side: usize = leg_dims.iter().product();
    let cols: usize = traced.iter().map(|&c| x.dims()[c]).product();

    // Unfold the tensor into rows = kept legs (in leg order), cols = traced.
    let mut unfolded = vec![Complex::<T>::zero(); side * cols];
    let dims = x.dims();
    let mut idx = vec![0usize; n];
    for (flat, &entry) in x.entries().iter().enumerate() {
        // Decompose `flat` (row-major) into per-color indices.
        let mut rem = flat;
        for c in (0..n).rev() {
            idx[c] = rem % dims[c];
            rem /= dims[c];
        }
        let mut row = 0usize;
        for (b, &c) in leg_colors.iter().enumerate() {
            row = row * leg_dims[b] + idx[c];
        }
        let mut col = 0usize;
        for &c in &traced {
            col = col * dims[c] + idx[c];
        }
        unfolded[row * cols + col] = entry;
    }

    // W = U U†, Hermitian by construction.
    let mut mat = CMatrix::zeros(side);
    for i in 0..side {
        for j in i..side {
            let mut acc = Complex::<T>::zero();
            for t in 0..cols {
                acc = acc + unfolded[i * cols + t] * unfolded[j * cols + t].conj();
            }
            mat.set(i, j, acc);
            mat.set(j, i, acc.conj());
        }
    }
    Ok(MarginalMatrix {
        mat,
        leg_colors,
        leg_dims,
    })
}

/// The twisted trace `Tr ·σ_{p-1} W_{p-1} ·σ_{p-2} … ·σ_0 W_0`: between
/// factors, row leg `b` of `W_a` is contracted with column leg `σ_a(b)` of
/// `W_{a+1}`; `σ_{p-1}` closes the trace. With identity twists this is the
/// ordinary trace of the matrix product.
pub fn twisted_trace_product<T: Real>(
    ms: &[MarginalMatrix<T>],
    sigmas: &[Permutation],
) -> Result<Complex<T>> {
    let p = ms.len();
    if p == 0 || sigmas.len() != p {
        return Err(Error::InvalidWord("one twist per factor required".into()));
    }
    let compat = |src: &MarginalMatrix<T>, sigma: &Permutation, dst: &MarginalMatrix<T>| {
        let q = src.leg_dims.len();
        if sigma.len() != q || dst.leg_dims.len() != q {
            return Err(Error::DimensionMismatch("leg counts disagree".into()));
        }
        for b in 0..q {
            if src.leg_dims[b] != dst.leg_dims[sigma.image(b)] {
                return Err(Error::DimensionMismatch(format!(
                    "leg {b} of one factor glued to a leg of different dimension"
                )));
            }
        }
        Ok(())
    };

    // Remaps the accumulated product's rows: row v of the product aligns with
    // column u of the next factor via v_b = u_{σ(b)}.
    let row_remap = |next: &MarginalMatrix<T>, sigma: &Permutation, acc_dims: &[usize]| {
        let side = next.side();
        let q = acc_dims.len();
        let mut map = vec![0usize; side];
        let mut u = vec![0usize; q];
        for (flat, slot) in map.iter_mut().enumerate() {
            let mut rem = flat;
            for b in (0..q).rev() {
                u[b] = rem % next.leg_dims[b];
                rem /= next.leg_dims[b];
            }
            let mut v = 0usize;
            for b in 0..q {
                v = v * acc_dims[b] + u[sigma.image(b)];
            }
            *slot = v;
        }
        map
    };

    let mut acc = ms[0].mat.clone();
    let mut acc_row_dims = ms[0].leg_dims.clone();
    for a in 1..p {
        compat(&ms[a - 1], &sigmas[a - 1], &ms[a])?;
        let side = ms[a].side();
        if side != acc.side() {
            return Err(Error::DimensionMismatch("factor sides disagree".into()));
        }
        let map = row_remap(&ms[a], &sigmas[a - 1], &acc_row_dims);
        // acc <- ms[a] ·σ acc : P[i, u] * acc[map(u), j]
        let permuted = CMatrix::from_fn(side, |u, j| acc.get(map[u], j));
        acc = ms[a].mat.mul(&permuted);
        acc_row_dims = ms[a].leg_dims.clone();
    }
    // Close the trace with σ_{p-1}: column leg σ(b) equals row leg b.
    compat(&ms[p - 1], &sigmas[p - 1], &ms[0])?;
    let sigma = &sigmas[p - 1];
    let q = acc_row_dims.len();
    let col_dims = ms[0].leg_dims.clone();
    let mut total = Complex::<T>::zero();
    let side = acc.side();
    let mut i_comp = vec![0usize; q];
    for i in 0..side {
        let mut rem = i;
        for b in (0..q).rev() {
            i_comp[b] = rem % acc_row_dims[b];
            rem /= acc_row_dims[b];
        }
        // column multi-index j with j_{σ(b)} = i_b
        let mut j_comp = vec![0usize; q];
        for b in 0..q {
            j_comp[sigma.image(b)] = i_comp[b];
        }
        let mut j = 0usize;
        for b in 0..q {
            j = j * col_dims[b] + j_comp[b];
        }
        total = total + acc.get(i, j);
    }
    Ok(total)
}

/// A Monte-Carlo estimate with its reproducibility token.
#[derive(Clone, Debug, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// Mean and standard error by deterministic tree summation.
    pub fn from_values(values: &[f64], seed: u64) -> MCEstimate {
        let n = values.len() as f64;
        let mean = tree_sum(values) / n;
        let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        let var = if values.len() > 1 {
            tree_sum(&sq) / (n - 1.0)
        } else {
            0.0
        };
        MCEstimate {
            mean,
            stderr: (var / n).sqrt(),
            samples: values.len() as u64,
            seed,
        }
    }

    /// Absolute z-score of the estimate against a reference value.
    pub fn z_score(&self, reference: f64) -> f64 {
        if self.stderr == 0.0 {
            if (self.mean - reference).abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - reference).abs() / self.stderr
        }
    }
}

fn sample_values<F>(samples: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<f64> + Sync + Send,
{
    (0..samples)
        .into_par_iter()
        .map(f)
        .collect::<Result<Vec<f64>>>()
}

/// Monte-Carlo estimate of `E Tr ·σ W_f` over fresh tensors.
pub fn mc_moment(
    word: &MarginalWord,
    profile: &DimensionProfile,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    word.validate_dims(profile.dims())?;
    if word.color_count() != profile.color_count() {
        return Err(Error::DimensionMismatch(
            "profile arity disagrees with word".into(),
        ));
    }
    let values = sample_values(samples, |idx| {
        let x: GaussianTensor<f64> = GaussianTensor::sample(profile, seed, idx)?;
        let ms: Result<Vec<MarginalMatrix<f64>>> = word
            .subsets()
            .iter()
            .map(|kept| marginal(&x, kept, None))
            .collect();
        Ok(twisted_trace_product(&ms?, word.sigmas())?.re)
    })?;
    Ok(MCEstimate::from_values(&values, seed))
}

/// Estimate of the overlap `Tr(ρ_{AB} ρ_{AC})` of the two normalized
/// 4-partite marginals (callers apply the regime rescaling).
pub fn mc_overlap(profile: &DimensionProfile, samples: u64, seed: u64) -> Result<MCEstimate> {
    if profile.color_count() != 4 {
        return Err(Error::DimensionMismatch(
            "overlap needs a 4-color profile".into(),
        ));
    }
    let values = sample_values(samples, |idx| {
        let x: GaussianTensor<f64> = GaussianTensor::sample(profile, seed, idx)?;
        let trace = x.norm_sqr();
        let wab = marginal(&x, &[0, 1], None)?;
        let wac = marginal(&x, &[0, 2], None)?;
        let prod = wab.matrix().mul(wac.matrix());
        Ok(prod.trace().re / (trace * trace))
    })?;
    Ok(MCEstimate::from_values(&values, seed))
}

/// Estimate of the fixed-entry cyclic product
/// `E[W_{i_1 i_p} W_{i_p i_{p-1}} ⋯ W_{i_2 i_1}]` of a bipartite Wishart
/// matrix at distinct indices `0, .., p-1`; the expectation is `M`.
pub fn mc_entrywise_bipartite(
    n: u64,
    m: u64,
    p: usize,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    if (p as u64) > n {
        return Err(Error::DimensionMismatch(
            "need at least p distinct row indices".into(),
        ));
    }
    let profile = DimensionProfile::new(vec![n, m])?;
    let values = sample_values(samples, |idx| {
        let x: GaussianTensor<f64> = GaussianTensor::sample(&profile, seed, idx)?;
        let w = marginal(&x, &[0], None)?;
        // Indices i_1..i_p = 0..p-1; cyclic product
        // W[i_1, i_p] W[i_p, i_{p-1}] ... W[i_2, i_1].
        let mut prod = w.matrix().get(0, p - 1);
        for j in (1..p).rev() {
            prod *= w.matrix().get(j, j - 1);
        }
        Ok(prod.re)
    })?;
    Ok(MCEstimate::from_values(&values, seed))
}

/// Estimate of `E[Π dims / Tr W]`, which concentrates at 1.
pub fn mc_trace_concentration(
    profile: &DimensionProfile,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    let expected: f64 = profile.dims().iter().map(|&d| d as f64).product();
    let values = sample_values(samples, |idx| {
        let x: GaussianTensor<f64> = GaussianTensor::sample(profile, seed, idx)?;
        Ok(expected / x.norm_sqr())
    })?;
    Ok(MCEstimate::from_values(&values, seed))
}

/// What spectrum to sample.
#[derive(Clone, Debug)]
pub enum SpectrumSpec {
    /// Eigenvalues of `W / N` for a bipartite Wishart of parameters `(N, M)`;
    /// tends to `MP_{M/N}`.
    BipartiteWishart { n: u64, m: u64 },
    /// Eigenvalues of `W_AB W_AC / (mN)²` at dimensions `(N, m, m, d)`,
    /// computed on the Hermitian form `S W_AC S`, `S = W_AB^{1/2}`.
    MarginalProduct { n: u64, m: u64, d: u64 },
}

/// Pooled rescaled eigenvalues over all samples.
pub fn pooled_eigenvalues(spec: &SpectrumSpec, samples: u64, seed: u64) -> Result<Vec<f64>> {
    let eigs: Result<Vec<Vec<f64>>> = (0..samples)
        .into_par_iter()
        .map(|idx| -> Result<Vec<f64>> {
            match spec {
                SpectrumSpec::BipartiteWishart { n, m } => {
                    if *n as usize > EIGEN_SIDE_CAP {
                        return Err(Error::MemoryCap {
                            requested: *n as usize,
                            cap: EIGEN_SIDE_CAP,
                        });
                    }
                    let profile = DimensionProfile::new(vec![*n, *m])?;
                    let x: GaussianTensor<f64> = GaussianTensor::sample(&profile, seed, idx)?;
                    let w = marginal(&x, &[0], None)?;
                    let scale = 1.0 / *n as f64;
                    Ok(w.matrix()
                        .eigen_hermitian()
                        .0
                        .iter()
                        .map(|l| l * scale)
                        .collect())
                }
                SpectrumSpec::MarginalProduct { n, m, d } => {
                    let side = (n * m) as usize;
                    if side > EIGEN_SIDE_CAP {
                        return Err(Error::MemoryCap {
                            requested: side,
                            cap: EIGEN_SIDE_CAP,
                        });
                    }
                    let profile = DimensionProfile::new(vec![*n, *m, *m, *d])?;
                    let x: GaussianTensor<f64> = GaussianTensor::sample(&profile, seed, idx)?;
                    let wab = marginal(&x, &[0, 1], None)?;
                    let wac = marginal(&x, &[0, 2], None)?;
                    let s = wab.matrix().sqrt_psd();
                    let herm = s.mul(wac.matrix()).mul(&s);
                    let scale = 1.0 / ((*m * *n) as f64 * (*m * *n) as f64);
                    Ok(herm.eigen_hermitian().0.iter().map(|l| l * scale).collect())
                }
            }
        })
        .collect();
    Ok(eigs?.into_iter().flatten().collect())
}

/// A pooled eigenvalue histogram normalized as a probability density.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub bin_left: Vec<f64>,
    pub bin_right: Vec<f64>,
    pub density: Vec<f64>,
    pub total_count: u64,
}

impl Histogram {
    pub fn from_values(values: &[f64], bins: usize, lo: f64, hi: f64) -> Histogram {
        let bins = bins.max(1);
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        for &v in values {
            if v < lo || v > hi {
                continue;
            }
            let b = (((v - lo) / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let total = values.len() as f64;
        Histogram {
            bin_left: (0..bins).map(|b| lo + b as f64 * width).collect(),
            bin_right: (0..bins).map(|b| lo + (b + 1) as f64 * width).collect(),
            density: counts.iter().map(|&c| c as f64 / (total * width)).collect(),
            total_count: values.len() as u64,
        }
    }
}

/// Pooled eigenvalue histogram of the requested spectrum.
pub fn eigen_hist(
    spec: &SpectrumSpec,
    bins: usize,
    samples: u64,
    seed: u64,
) -> Result<(Histogram, Vec<f64>)> {
    let values = pooled_eigenvalues(spec, samples, seed)?;
    let hi = values.iter().copied().fold(0.0, f64::max) * 1.0001;
    let hist = Histogram::from_values(&values, bins, 0.0, hi.max(1e-9));
    Ok((hist, values))
}
