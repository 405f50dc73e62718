//! Large-dimension limit moments, free cumulants, Marčenko-Pastur quantities
//! and regime classification.
//!
//! Limit moments are exact: polynomials in the ratio `c` and in `1/m` with
//! big-integer coefficients. Numerical evaluation is a separate step.

mod density;
mod limits;
mod trees;

pub use density::{
    mp_atom, mp_density, mp_moment_quadrature, mp_squared_density, mp_squared_moment_quadrature,
    mp_support,
};
pub use limits::{
    balanced_general_count, free_cumulant_unbalanced4, limit_moment_balanced4,
    limit_moment_balanced_general, limit_moment_two_chain, limit_moment_unbalanced4,
    limit_moment_unbalanced_general, moment_from_cumulants_unbalanced4, mp_moment, phi_completion,
    regime_exponent_mu,
};
pub use trees::tree_count_recursive;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::{Error, Result};

/// An exact limit moment: `Σ coeff · c^a · m^{-b}`. The `m` exponent is
/// signed so that un-normalized general-regime values fit too; in the
/// 4-partite tables all `m` powers are nonpositive (`b >= 0`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LimitMoment {
    terms: BTreeMap<(u32, i64), BigUint>,
}

/// JSON-facing term of a [`LimitMoment`].
#[derive(Debug, Clone, Serialize)]
pub struct LimitTermRecord {
    pub c_power: u32,
    pub m_negpower: i64,
    pub coeff: String,
}

impl LimitMoment {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Single term `coeff · c^a · m^{-b}`.
    pub fn term(c_power: u32, m_negpower: i64, coeff: u64) -> Self {
        let mut t = Self::default();
        t.add(c_power, m_negpower, BigUint::from(coeff));
        t
    }

    pub fn add(&mut self, c_power: u32, m_negpower: i64, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self
            .terms
            .entry((c_power, m_negpower))
            .or_insert_with(BigUint::zero) += coeff;
    }

    pub fn from_triples(triples: &[(u32, i64, u64)]) -> Self {
        let mut t = Self::default();
        for &(a, b, coeff) in triples {
            t.add(a, b, BigUint::from(coeff));
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64), &BigUint)> {
        self.terms.iter()
    }

    pub fn records(&self) -> Vec<LimitTermRecord> {
        self.terms
            .iter()
            .map(|(&(a, b), c)| LimitTermRecord {
                c_power: a,
                m_negpower: b,
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn eval(&self, c: f64, m: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), coeff)| {
                coeff.to_f64().unwrap_or(f64::INFINITY) * c.powi(a as i32) * m.powf(-b as f64)
            })
            .sum()
    }

    /// Drops every term carrying a negative power of `m` (the `m -> ∞`
    /// degeneration).
    pub fn m_to_infinity(&self) -> LimitMoment {
        let mut out = LimitMoment::zero();
        for (&(a, b), coeff) in &self.terms {
            if b <= 0 {
                out.add(a, b, coeff.clone());
            }
        }
        out
    }

    /// Sets `m = 1`, collapsing onto the `c` powers.
    pub fn m_to_one(&self) -> LimitMoment {
        let mut out = LimitMoment::zero();
        for (&(a, _), coeff) in &self.terms {
            out.add(a, 0, coeff.clone());
        }
        out
    }

    /// `"c^2 + c m^-2"`-style rendering, ordered by ascending `(c, m)` powers.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), coeff)| {
                let mut factors = Vec::new();
                if !coeff.is_one() || (a == 0 && b == 0) {
                    factors.push(coeff.to_string());
                }
                match a {
                    0 => {}
                    1 => factors.push("c".to_string()),
                    _ => factors.push(format!("c^{a}")),
                }
                if b != 0 {
                    factors.push(format!("m^{}", -b));
                }
                factors.join(" ")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Asymptotic regime selector with its parameters.
#[derive(Clone, Debug)]
pub enum Regime {
    /// 4-partite, `dim B = dim C -> ∞`, `dim D / dim A -> c`.
    Balanced4 { c: f64 },
    /// 4-partite, `dim B = dim C = m` fixed, `dim A ~ N`, `dim D ~ cN`.
    Unbalanced4 { c: f64, m: u32 },
    /// All colors grow like `c_i N`; permuted marginals with `|I_a| = n/2`.
    BalancedGeneral { cs: Vec<f64> },
    /// More than half the colors kept: dominant-map classification only.
    GeneralMoreThanHalf,
    /// Moving colors fixed at `m`, as many traced as fixed colors.
    UnbalancedGeneral { c: f64, m: u32 },
}

impl Regime {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64, what: &str| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::RegimeMismatch(format!(
                    "{what} must be positive and finite"
                )))
            }
        };
        match self {
            Regime::Balanced4 { c } => positive(*c, "c"),
            Regime::Unbalanced4 { c, m } | Regime::UnbalancedGeneral { c, m } => {
                positive(*c, "c")?;
                if *m == 0 {
                    return Err(Error::RegimeMismatch("m must be a positive integer".into()));
                }
                Ok(())
            }
            Regime::BalancedGeneral { cs } => {
                for &c in cs {
                    positive(c, "c_i")?;
                }
                Ok(())
            }
            Regime::GeneralMoreThanHalf => Ok(()),
        }
    }
}
