//! Mixed moments of overlapping marginals of complex Gaussian (Wishart) tensors.
//!
//! A Wishart tensor is `W = X X*` for a random tensor `X` with i.i.d. standard
//! complex Gaussian entries on a product space `C^{N_1} ⊗ … ⊗ C^{N_n}`. Its
//! *marginals* `W_I = [id_I ⊗ Tr_Î](X X*)` are partial traces over a subset of
//! tensor factors; different marginals of the same tensor overlap and are
//! correlated. This crate computes their joint mixed moments three ways and
//! cross-checks the routes against each other:
//!
//! * **exact** — as multivariate polynomials in the dimensions, by summing a
//!   combinatorial weight over Wick permutations / bicolored combinatorial
//!   maps ([`moments`]);
//! * **asymptotic** — large-dimension limits and free cumulants in the
//!   balanced and unbalanced regimes, via non-crossing partitions and planar
//!   map counts ([`asymptotics`]);
//! * **Monte-Carlo** — by sampling Gaussian tensors, forming marginals and
//!   twisted traces numerically ([`montecarlo`]).
//!
//! The combinatorial substrate (permutations, set and non-crossing partitions,
//! Kreweras complementation, bicolored maps and their genus) lives in
//! [`combinat`] and [`maps`].
//!
//! Exact quantities use arbitrary-precision integers throughout; floating
//! point enters only in the numerical layer, which is generic over the scalar
//! type through [`Real`].

pub mod asymptotics;
pub mod combinat;
pub mod maps;
pub mod moments;
pub mod montecarlo;

mod error;
mod num;

pub use error::Error;
pub use num::Real;

/// Default floating-point scalar used by the concrete aliases below.
pub type Scalar = f64;

/// Complex number over the default scalar.
pub type Complex64 = num_complex::Complex<Scalar>;

/// Gaussian tensor sample over the default scalar.
pub type GaussianTensor64 = montecarlo::GaussianTensor<Scalar>;

/// Dense complex matrix over the default scalar.
pub type CMatrix64 = montecarlo::CMatrix<Scalar>;

/// Result alias over the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
