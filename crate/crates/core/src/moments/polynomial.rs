use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use super::MarginalWord;
use crate::{Error, Result};

/// One polynomial variable: a single color dimension, or the shared dimension
/// of all moving colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarClass {
    Fixed(usize),
    Moving(Vec<usize>),
    Traced(usize),
}

/// Ordered variable set of a moment polynomial, with display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableLegend {
    classes: Vec<VarClass>,
    names: Vec<String>,
}

impl VariableLegend {
    /// Legend for a word: fixed colors, then the moving class (if any), then
    /// traced colors. Bipartite and 4-partite words get their customary
    /// names (`N, M` and `N_A, N_{B,C}, N_D`).
    pub fn for_word(word: &MarginalWord) -> Self {
        let mut classes: Vec<VarClass> = word
            .fixed_colors()
            .iter()
            .map(|&c| VarClass::Fixed(c))
            .collect();
        if word.k() > 0 {
            classes.push(VarClass::Moving(word.moving_colors().to_vec()));
        }
        classes.extend(word.traced_colors().iter().map(|&c| VarClass::Traced(c)));

        let names = if word.is_bipartite() {
            vec!["N".to_string(), "M".to_string()]
        } else if word.as_four_partite().is_some() && word.k() > 0 {
            vec!["N_A".to_string(), "N_{B,C}".to_string(), "N_D".to_string()]
        } else {
            classes
                .iter()
                .map(|cl| match cl {
                    VarClass::Fixed(c) | VarClass::Traced(c) => format!("N{c}"),
                    VarClass::Moving(_) => "NJ".to_string(),
                })
                .collect()
        };
        VariableLegend { classes, names }
    }

    pub fn classes(&self) -> &[VarClass] {
        &self.classes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.classes.len()
    }

    /// Maps a per-color dimension profile to per-class values.
    pub fn class_dims(&self, dims: &[u64]) -> Vec<u64> {
        self.classes
            .iter()
            .map(|cl| match cl {
                VarClass::Fixed(c) | VarClass::Traced(c) => dims[*c],
                VarClass::Moving(colors) => dims[colors[0]],
            })
            .collect()
    }
}

/// JSON-facing term record.
#[derive(Debug, Clone, Serialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// An exact multivariate moment polynomial with nonnegative big-integer
/// coefficients, canonically ordered by ascending exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPolynomial {
    legend: VariableLegend,
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl MomentPolynomial {
    pub fn zero(legend: VariableLegend) -> Self {
        MomentPolynomial {
            legend,
            terms: BTreeMap::new(),
        }
    }

    pub fn legend(&self) -> &VariableLegend {
        &self.legend
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: BigUint) {
        debug_assert_eq!(exponents.len(), self.legend.arity());
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(exponents).or_insert_with(BigUint::zero) += coeff;
    }

    pub fn merge(&mut self, other: MomentPolynomial) {
        debug_assert_eq!(self.legend, other.legend);
        for (e, c) in other.terms {
            self.add_term(e, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigUint)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates at a per-color dimension profile (validated by the caller
    /// against the word).
    pub fn evaluate(&self, dims: &[u64]) -> Result<BigUint> {
        if dims.contains(&0) {
            return Err(Error::DimensionMismatch(
                "dimensions must be positive".into(),
            ));
        }
        let class_dims = self.legend.class_dims(dims);
        let mut total = BigUint::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (e, d) in exps.iter().zip(&class_dims) {
                term *= BigUint::from(*d).pow(*e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Canonical rendering: terms by ascending exponent vector, factors in
    /// legend order, e.g. `N M^2 + N^2 M`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, coeff)| {
                let mut factors: Vec<String> = Vec::new();
                if !coeff.is_one() {
                    factors.push(coeff.to_string());
                }
                for (e, name) in exps.iter().zip(self.legend.names()) {
                    match e {
                        0 => {}
                        1 => factors.push(name.clone()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join(" ")
                }
            })
            .collect();
        rendered.join(" + ")
    }

    pub fn term_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                exponents: e.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    /// Collapses the polynomial to a single variable (all class dimensions
    /// equal): returns total-degree -> coefficient.
    pub fn collapse_univariate(&self) -> BTreeMap<u32, BigUint> {
        let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let degree: u32 = exps.iter().sum();
            *out.entry(degree).or_insert_with(BigUint::zero) += coeff.clone();
        }
        out
    }
}

/// A normalized moment written in powers of `N^{-2}`: `coeffs[k]` multiplies
/// `N^{-2k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMomentSeries {
    coeffs: Vec<BigUint>,
}

impl NormalizedMomentSeries {
    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        NormalizedMomentSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `"3 + 8 N^-2 + 8 N^-4 + 5 N^-6"`.
    pub fn canonical_string(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let part = match (k, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => format!("N^-{}", 2 * k),
                (_, false) => format!("{c} N^-{}", 2 * k),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn eval(&self, n: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY) * n.powi(-2 * k as i32))
            .sum()
    }
}
