use crate::Real;

/// Mass of the atom at zero of `MP_c`: `max(1 - c, 0)`.
pub fn mp_atom<T: Real>(c: T) -> T {
    (T::one() - c).max(T::zero())
}

/// Support endpoints `a = (1 - √c)²`, `b = (1 + √c)²` of the continuous part.
pub fn mp_support<T: Real>(c: T) -> (T, T) {
    let s = c.sqrt();
    ((T::one() - s).powi(2), (T::one() + s).powi(2))
}

/// Continuous part of the Marčenko-Pastur density,
/// `√((b - x)(x - a)) / (2π x)` on `[a, b]`; the atom is reported separately
/// by [`mp_atom`].
pub fn mp_density<T: Real>(x: T, c: T) -> T {
    let (a, b) = mp_support(c);
    if x <= T::zero() || x < a || x > b {
        return T::zero();
    }
    let two_pi = T::from_f64_lossy(2.0 * std::f64::consts::PI);
    ((b - x) * (x - a)).sqrt() / (two_pi * x)
}

/// Density of the square of an `MP_c` variable: `mp_density(√x, c) / (2 √x)`.
pub fn mp_squared_density<T: Real>(x: T, c: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    let root = x.sqrt();
    mp_density(root, c) / (root + root)
}

/// `∫ x^p dMP_c` by quadrature of the continuous part (exact for `p >= 1`
/// since the atom sits at zero). Uses the substitution
/// `x(θ) = (a+b)/2 - ((b-a)/2) cos θ`, which absorbs the square-root edges,
/// then composite Simpson.
pub fn mp_moment_quadrature(p: u32, c: f64) -> f64 {
    assert!(p >= 1, "the p = 0 moment needs the atom");
    let (a, b) = mp_support(c);
    let half_width = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let integrand = |theta: f64| {
        let x = mid - half_width * theta.cos();
        let jac = half_width * theta.sin();
        // x^p * sqrt((b-x)(x-a)) / (2 pi x) * dx, with sqrt(..) = jac
        x.powi(p as i32 - 1) * jac * jac / (2.0 * std::f64::consts::PI)
    };
    simpson(integrand, 0.0, std::f64::consts::PI, 1 << 13)
}

/// `∫ x^p` against [`mp_squared_density`], via `x = y²` and the same edge
/// substitution in `y`; must match `mp_moment_quadrature(2p, c)` and the
/// non-crossing sum for `2p`.
pub fn mp_squared_moment_quadrature(p: u32, c: f64) -> f64 {
    assert!(p >= 1);
    let (a, b) = mp_support(c);
    let half_width = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let integrand = |theta: f64| {
        let y = mid - half_width * theta.cos();
        let jac = half_width * theta.sin();
        // ∫ x^p ρ(x) dx = ∫ y^{2p} ρ(y²) 2y dy
        y.powi(2 * p as i32) * mp_squared_density(y * y, c) * 2.0 * y * jac
    };
    simpson(integrand, 0.0, std::f64::consts::PI, 1 << 13)
}

fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let n = panels.max(2) & !1; // even
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}
