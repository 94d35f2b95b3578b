//! Formula generators and the positivity check for classical tautologies.
//!
//! For a tautology `t` and any member `v` with positive weight, the constant
//! sequence with every leaf at `v` justifies `t` (a constant sequence
//! justifies a formula exactly when `v` satisfies it classically) and weighs
//! `w(v)^occurrences > 0`. Tautologies therefore always have positive
//! measure. The converse fails: `A` alone has measure 1/2 under uniform
//! weights.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{is_tautology, Formula};
use crate::measure::measure;
use crate::rational::Rational;
use crate::sequence::{justifies, shape_of, weight, WellFormedSequence};
use crate::valuation::{standard_collection, uniform_weights, ValuationCollection, WeightDistribution};

/// Draws tried by the filtered branch of [`random_tautology`].
pub const TAUTOLOGY_BUDGET: usize = 1000;

/// Atom cap for [`random_tautology`].
pub const TAUTOLOGY_GENERATOR_ATOMS: usize = 3;

/// Deterministic random formula with at most `2^(max_depth-1)` leaves.
///
/// Depth 1 yields an atom or a negated atom. Deeper levels pick uniformly
/// among atom, negation, conjunction, disjunction and implication.
///
/// Panics if `max_depth` is 0 or `atoms` is empty.
pub fn random_formula<S: AsRef<str>>(seed: u64, max_depth: usize, atoms: &[S]) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_formula(&mut rng, max_depth, atoms)
}

fn gen_formula<S: AsRef<str>>(rng: &mut impl Rng, depth: usize, atoms: &[S]) -> Formula {
    assert!(depth >= 1, "max_depth must be at least 1");
    assert!(!atoms.is_empty(), "need at least one atom");
    let atom = |rng: &mut dyn rand::RngCore| Formula::atom(atoms[rng.random_range(0..atoms.len())].as_ref());
    if depth == 1 {
        let a = atom(rng);
        return if rng.random_bool(0.5) { Formula::not(a) } else { a };
    }
    match rng.random_range(0..5) {
        0 => atom(rng),
        1 => Formula::not(gen_formula(rng, depth - 1, atoms)),
        k => {
            let l = gen_formula(rng, depth - 1, atoms);
            let r = gen_formula(rng, depth - 1, atoms);
            match k {
                2 => Formula::and(l, r),
                3 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            }
        }
    }
}

/// Deterministic classical tautology over at most three atoms.
///
/// Mixes the schemas `a | !a`, `!(a & !a)` and `((a -> b) & a) -> b` with
/// random `a`, `b`, and random formulas filtered through the truth table.
pub fn random_tautology<S: AsRef<str>>(seed: u64, atoms: &[S]) -> Result<Formula> {
    if atoms.len() > TAUTOLOGY_GENERATOR_ATOMS {
        return Err(Error::AtomCap { count: atoms.len(), cap: TAUTOLOGY_GENERATOR_ATOMS });
    }
    if atoms.is_empty() {
        return Err(Error::Collection("need at least one atom".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub = |rng: &mut ChaCha8Rng| {
        let depth = rng.random_range(1..=3);
        gen_formula(rng, depth, atoms)
    };
    let formula = match rng.random_range(0..4) {
        0 => {
            let a = sub(&mut rng);
            Formula::or(a.clone(), Formula::not(a))
        }
        1 => {
            let a = sub(&mut rng);
            Formula::not(Formula::and(a.clone(), Formula::not(a)))
        }
        2 => {
            let a = sub(&mut rng);
            let b = sub(&mut rng);
            Formula::implies(Formula::and(Formula::implies(a.clone(), b.clone()), a), b)
        }
        _ => {
            let found = (0..TAUTOLOGY_BUDGET)
                .map(|_| gen_formula(&mut rng, 3, atoms))
                .find(|f| is_tautology(f).unwrap_or(false));
            found.ok_or(Error::GenerationBudget(TAUTOLOGY_BUDGET))?
        }
    };
    debug_assert!(is_tautology(&formula).unwrap_or(false));
    Ok(formula)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub formula: Formula,
    pub is_taut: bool,
    pub measure: Rational,
    pub positive: bool,
}

impl SoundnessReport {
    /// A tautology must have positive measure.
    pub fn upholds_soundness(&self) -> bool {
        !self.is_taut || self.positive
    }
}

pub fn soundness_check(formula: &Formula, weights: &WeightDistribution) -> Result<SoundnessReport> {
    let m = measure(formula, weights)?.into_inner();
    Ok(SoundnessReport {
        formula: formula.clone(),
        is_taut: is_tautology(formula)?,
        positive: m > Rational::zero(),
        measure: m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantWitness {
    pub member: usize,
    pub sequence: WellFormedSequence,
    pub weight: Rational,
}

/// First member with positive weight whose constant sequence justifies
/// `formula`, checked through the sequence definitions.
pub fn constant_witness(formula: &Formula, weights: &WeightDistribution) -> Result<Option<ConstantWitness>> {
    let shape = shape_of(formula);
    for (member, w) in weights.weights().iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let sequence = WellFormedSequence::constant(&shape, member);
        if justifies(&sequence, formula, weights.collection())? {
            let weight = weight(&sequence, weights)?;
            return Ok(Some(ConstantWitness { member, sequence, weight }));
        }
    }
    Ok(None)
}

/// Whether, for every member `v`, the constant sequence at `v` justifies
/// `formula` exactly when `v` satisfies it classically.
pub fn constant_sequence_lemma_holds(formula: &Formula, collection: &ValuationCollection) -> Result<bool> {
    let shape = shape_of(formula);
    for member in 0..collection.len() {
        let s = WellFormedSequence::constant(&shape, member);
        let v = collection.member(member).expect("member in range");
        if justifies(&s, formula, collection)? != formula.eval_classical(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A` under uniform weights over `{A}`: measure 1/2, not a tautology.
pub fn completeness_counterexample() -> (Formula, WeightDistribution, Rational) {
    let formula = Formula::atom("A");
    let weights = uniform_weights(&standard_collection(&["A"]).expect("one atom"));
    let m = measure(&formula, &weights).expect("atom is declared").into_inner();
    (formula, weights, m)
}

/// Every formula with exactly `occurrences` atom leaves over `atoms`:
/// leaves are literals (`A` or `!A`), internal nodes are `&`, `|` or `->`,
/// and with `negate_internal` each internal node also appears negated.
pub fn formulas_with_occurrences<S: AsRef<str>>(atoms: &[S], occurrences: usize, negate_internal: bool) -> Vec<Formula> {
    assert!(occurrences >= 1);
    if occurrences == 1 {
        return atoms
            .iter()
            .flat_map(|a| {
                let a = Formula::atom(a.as_ref());
                [a.clone(), Formula::not(a)]
            })
            .collect();
    }
    let mut out = Vec::new();
    for left_n in 1..occurrences {
        let lefts = formulas_with_occurrences(atoms, left_n, negate_internal);
        let rights = formulas_with_occurrences(atoms, occurrences - left_n, negate_internal);
        for l in &lefts {
            for r in &rights {
                for node in [
                    Formula::and(l.clone(), r.clone()),
                    Formula::or(l.clone(), r.clone()),
                    Formula::implies(l.clone(), r.clone()),
                ] {
                    if negate_internal {
                        out.push(Formula::not(node.clone()));
                    }
                    out.push(node);
                }
            }
        }
    }
    out
}
