use num_bigint::BigUint;
use num_traits::One;

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Catalan number `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// Fuss-Catalan number of order 2, `FC_2(q) = C(3q, q) / (2q + 1)`: the number
/// of 2-chains in `NC(q)` and the `q`-th moment of `MP_1 ⊠ MP_1`.
pub fn fuss_catalan_2(q: u64) -> BigUint {
    binomial(3 * q, q) / BigUint::from(2 * q + 1)
}
