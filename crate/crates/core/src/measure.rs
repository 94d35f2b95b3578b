//! Compositional evaluation of the logical measure.
//!
//! Each leaf slot of an associated sequence is weighted independently and
//! justification decomposes per connective, so the measure obeys
//!
//! ```text
//! m(A)      = marginal of A
//! m(!a)     = 1 - m(a)
//! m(a & b)  = m(a) m(b)
//! m(a | b)  = m(a) + m(b) - m(a) m(b)
//! m(a -> b) = 1 - m(a) + m(a) m(b)
//! ```
//!
//! Repeated occurrences of an atom are independent: `m(A & A) = m(A)^2`.
//! Shared subformulas must not be cached as if they were one event.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rational::{format_decimal12, to_f64, Rational};
use crate::valuation::WeightDistribution;

/// A measure in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(Rational);

impl MeasureValue {
    pub fn new(value: Rational) -> Option<Self> {
        (value >= Rational::zero() && value <= Rational::one()).then_some(MeasureValue(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero()
    }

    /// `1/4 (0.25)`
    pub fn display_with_decimal(&self) -> String {
        format!("{} ({})", self.0, format_decimal12(&self.0))
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn measure(formula: &Formula, weights: &WeightDistribution) -> Result<MeasureValue> {
    if let Some(value) = measure_scaled(formula, weights)? {
        return MeasureValue::new(value).ok_or_else(|| Error::InvalidWeights(weights.validate()));
    }
    let mut marginals = BTreeMap::new();
    for atom in formula.atoms() {
        let m = weights.atom_marginal(&atom)?;
        marginals.insert(atom, m);
    }
    let value = eval(formula, &marginals)?;
    MeasureValue::new(value).ok_or_else(|| Error::InvalidWeights(weights.validate()))
}

fn eval(formula: &Formula, marginals: &BTreeMap<String, Rational>) -> Result<Rational> {
    Ok(match formula {
        Formula::Atom(a) => marginals.get(a).cloned().ok_or_else(|| Error::UnknownAtom(a.clone()))?,
        Formula::Not(c) => Rational::one() - eval(c, marginals)?,
        Formula::And(l, r) => eval(l, marginals)? * eval(r, marginals)?,
        Formula::Or(l, r) => {
            let a = eval(l, marginals)?;
            let b = eval(r, marginals)?;
            &a + &b - a * b
        }
        Formula::Implies(l, r) => {
            let a = eval(l, marginals)?;
            let b = eval(r, marginals)?;
            Rational::one() - &a + a * b
        }
    })
}

/// Fast path: with `D` the common denominator of the weights, a subformula
/// with `k` leaves has measure `n / D^k` for an integer `n`. `None` when a
/// numerator or scale leaves `u128`, or the weights are not in `[0, 1]`.
fn measure_scaled(formula: &Formula, weights: &WeightDistribution) -> Result<Option<Rational>> {
    let collection = weights.collection();
    let mut indices = BTreeMap::new();
    for atom in formula.atoms() {
        let j = collection.atom_index(&atom).ok_or_else(|| Error::UnknownAtom(atom.clone()))?;
        indices.insert(atom, j);
    }
    if weights.weights().len() != collection.len() {
        return Ok(None);
    }
    let Some(denom) = weights.weights().iter().try_fold(1u128, |acc, w| {
        let d = w.denom().to_u128()?;
        (acc / acc.gcd(&d)).checked_mul(d)
    }) else {
        return Ok(None);
    };
    let Some(numers) = weights
        .weights()
        .iter()
        .map(|w| w.numer().to_u128()?.checked_mul(denom / w.denom().to_u128()?))
        .collect::<Option<Vec<u128>>>()
    else {
        return Ok(None);
    };
    let mut marginals = BTreeMap::new();
    for (atom, j) in indices {
        let sum = (0..collection.len())
            .filter(|&i| collection.value(i, j))
            .try_fold(0u128, |acc, i| acc.checked_add(numers[i]));
        match sum {
            Some(n) if n <= denom => marginals.insert(atom, n),
            _ => return Ok(None),
        };
    }
    Ok(eval_scaled(formula, &marginals, denom)
        .map(|(n, scale)| Rational::new(BigInt::from(n), BigInt::from(scale))))
}

/// `(numerator, scale)` with `numerator <= scale`.
fn eval_scaled(formula: &Formula, marginals: &BTreeMap<String, u128>, denom: u128) -> Option<(u128, u128)> {
    Some(match formula {
        Formula::Atom(a) => (marginals[a], denom),
        Formula::Not(c) => {
            let (n, s) = eval_scaled(c, marginals, denom)?;
            (s - n, s)
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let (a, sa) = eval_scaled(l, marginals, denom)?;
            let (b, sb) = eval_scaled(r, marginals, denom)?;
            let scale = sa.checked_mul(sb)?;
            let ab = a * b;
            let n = match formula {
                Formula::And(..) => ab,
                // a(sb - b) + b sa
                Formula::Or(..) => (a * (sb - b)).checked_add(b.checked_mul(sa)?)?,
                // (sa - a) sb + ab
                _ => ((sa - a) * sb).checked_add(ab)?,
            };
            (n, scale)
        }
    })
}

/// Nearest double to [`measure`].
pub fn measure_float(formula: &Formula, weights: &WeightDistribution) -> Result<f64> {
    Ok(measure(formula, weights)?.to_f64())
}
