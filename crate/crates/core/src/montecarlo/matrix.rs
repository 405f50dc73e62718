use num_complex::Complex;
use num_traits::{One, Zero};

use crate::Real;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T: Real> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn side(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n)
            .map(|i| self.get(i, i))
            .fold(Complex::zero(), |a, b| a + b)
    }

    pub fn mul(&self, other: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + aik * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix<T> {
        CMatrix::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn scaled(&self, factor: T) -> CMatrix<T> {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), T::max)
            .sqrt()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in i..self.n {
                let d = self.get(i, j) - self.get(j, i).conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    fn off_diagonal_sqr(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc = acc + self.get(i, j).norm_sqr();
                }
            }
        }
        acc
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations:
    /// returns `(eigenvalues, V)` with `self = V diag(λ) V†`. Eigenvalues are
    /// unsorted.
    pub fn eigen_hermitian(&self) -> (Vec<T>, CMatrix<T>) {
        let n = self.n;
        let mut a = self.clone();
        let mut v = CMatrix::identity(n);
        if n <= 1 {
            return ((0..n).map(|i| a.get(i, i).re).collect(), v);
        }
        let scale = self.max_abs().max(T::one());
        let tol = T::epsilon() * scale * T::from_f64_lossy(n as f64);
        for _sweep in 0..60 {
            if a.off_diagonal_sqr().sqrt() <= tol {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a.get(p, q);
                    let abs = apq.norm();
                    if abs <= T::epsilon() * scale {
                        continue;
                    }
                    let phase = apq / abs;
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let tau = (aqq - app) / (abs + abs);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;

                    // A <- A R, with R_pp = c, R_pq = s e^{iφ},
                    // R_qp = -s e^{-iφ}, R_qq = c.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c - akq * phase.conj() * s);
                        a.set(k, q, akp * phase * s + akq * c);
                    }
                    // A <- R† A.
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c - aqk * phase * s);
                        a.set(q, k, apk * phase.conj() * s + aqk * c);
                    }
                    // V <- V R.
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp * c - vkq * phase.conj() * s);
                        v.set(k, q, vkp * phase * s + vkq * c);
                    }
                }
            }
        }
        ((0..n).map(|i| a.get(i, i).re).collect(), v)
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigen_hermitian()
            .0
            .into_iter()
            .fold(T::infinity(), T::min)
    }

    /// Positive-semidefinite square root via the Jacobi eigendecomposition;
    /// negative eigenvalues (roundoff) are clamped to zero.
    pub fn sqrt_psd(&self) -> CMatrix<T> {
        let (vals, v) = self.eigen_hermitian();
        let roots: Vec<T> = vals.iter().map(|&l| l.max(T::zero()).sqrt()).collect();
        // V diag(√λ) V†
        let n = self.n;
        let mut scaled = v.clone();
        for (j, &root) in roots.iter().enumerate() {
            for i in 0..n {
                let z = scaled.get(i, j);
                scaled.set(i, j, z * root);
            }
        }
        scaled.mul(&v.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eigen_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let mut a = CMatrix::zeros(2);
        a.set(0, 0, c(2.0, 0.0));
        a.set(0, 1, c(0.0, 1.0));
        a.set(1, 0, c(0.0, -1.0));
        a.set(1, 1, c(2.0, 0.0));
        let (mut vals, _) = a.eigen_hermitian();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_reconstructs_matrix() {
        // Deterministic pseudo-random Hermitian matrix.
        let n = 12;
        let mut state = 1234567u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut a = CMatrix::zeros(n);
        for i in 0..n {
            a.set(i, i, c(next(), 0.0));
            for j in i + 1..n {
                let z = c(next(), next());
                a.set(i, j, z);
                a.set(j, i, z.conj());
            }
        }
        let (vals, v) = a.eigen_hermitian();
        // V diag V† == A.
        let mut recon = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = c(0.0, 0.0);
                for (k, &val) in vals.iter().enumerate() {
                    acc += v.get(i, k) * val * v.get(j, k).conj();
                }
                recon.set(i, j, acc);
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert!((recon.get(i, j) - a.get(i, j)).norm() < 1e-10);
            }
        }
        // V unitary.
        let vv = v.adjoint().mul(&v);
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((vv.get(i, j) - c(expected, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn sqrt_of_psd_squares_back() {
        let n = 6;
        // A = B B† is PSD.
        let b = CMatrix::from_fn(n, |i, j| {
            c(
                (i * n + j) as f64 / 7.0 - 2.0,
                (i + 2 * j) as f64 / 5.0 - 1.0,
            )
        });
        let a = b.mul(&b.adjoint());
        let s = a.sqrt_psd();
        let s2 = s.mul(&s);
        for i in 0..n {
            for j in 0..n {
                assert!((s2.get(i, j) - a.get(i, j)).norm() < 1e-8 * a.max_abs());
            }
        }
    }

    #[test]
    fn generic_scalar_eigen() {
        let mut a = CMatrix::<f32>::zeros(2);
        a.set(0, 0, Complex::new(2.0f32, 0.0));
        a.set(0, 1, Complex::new(0.0, 1.0));
        a.set(1, 0, Complex::new(0.0, -1.0));
        a.set(1, 1, Complex::new(2.0, 0.0));
        let (mut vals, _) = a.eigen_hermitian();
        vals.sort_by(f32::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-5);
        assert!((vals[1] - 3.0).abs() < 1e-5);
    }
}
