//! Well-formed sequences of truth valuations and the enumeration oracle.
//!
//! A formula is associated with every sequence whose tree has the formula's
//! connective structure with negations erased: one leaf per atom occurrence.
//! A sequence justifies a formula by recursion on the connectives:
//!
//! | formula   | sequence     | justified iff                          |
//! |-----------|--------------|----------------------------------------|
//! | `A`       | `<v>`        | `v(A)` is true                         |
//! | `!a`      | `s`          | `s` does not justify `a`               |
//! | `a & b`   | `<si, sj>`   | `si` justifies `a` and `sj` justifies `b` |
//! | `a \| b`  | `<si, sj>`   | `si` justifies `a` or `sj` justifies `b`  |
//! | `a -> b`  | `<si, sj>`   | `si` does not justify `a` or `sj` justifies `b` |
//!
//! A sequence weighs the product of its leaf weights, and the measure of a
//! formula is the total weight of the associated sequences that justify it.
//! [`measure_oracle`] computes that sum by brute force.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{AddAssign, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formula::{Formula, Program};
use crate::rational::Rational;
use crate::valuation::{ValuationCollection, WeightDistribution};

/// Default bound on `|C|^occurrences`.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Justifying sets are listed in reports only up to this many associated sequences.
pub const LIST_LIMIT: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SequenceShape {
    Slot,
    Pair(Box<SequenceShape>, Box<SequenceShape>),
}

impl SequenceShape {
    pub fn slots(&self) -> usize {
        match self {
            SequenceShape::Slot => 1,
            SequenceShape::Pair(l, r) => l.slots() + r.slots(),
        }
    }
}

/// The formula's connective tree with negations erased.
pub fn shape_of(formula: &Formula) -> SequenceShape {
    match formula {
        Formula::Atom(_) => SequenceShape::Slot,
        Formula::Not(c) => shape_of(c),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            SequenceShape::Pair(Box::new(shape_of(l)), Box::new(shape_of(r)))
        }
    }
}

/// Binary tree of valuations. Leaves hold member indices into a
/// [`ValuationCollection`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WellFormedSequence {
    Leaf(usize),
    Pair(Box<WellFormedSequence>, Box<WellFormedSequence>),
}

impl WellFormedSequence {
    pub fn pair(left: WellFormedSequence, right: WellFormedSequence) -> Self {
        WellFormedSequence::Pair(Box::new(left), Box::new(right))
    }

    /// Labels the slots of `shape` left to right. `None` if the number of
    /// leaves differs from the number of slots.
    pub fn fill(shape: &SequenceShape, leaves: &[usize]) -> Option<Self> {
        let mut it = leaves.iter().copied();
        let s = Self::fill_from(shape, &mut it)?;
        it.next().is_none().then_some(s)
    }

    fn fill_from(shape: &SequenceShape, leaves: &mut impl Iterator<Item = usize>) -> Option<Self> {
        Some(match shape {
            SequenceShape::Slot => WellFormedSequence::Leaf(leaves.next()?),
            SequenceShape::Pair(l, r) => {
                let l = Self::fill_from(l, leaves)?;
                let r = Self::fill_from(r, leaves)?;
                Self::pair(l, r)
            }
        })
    }

    /// Every leaf is `member`.
    pub fn constant(shape: &SequenceShape, member: usize) -> Self {
        match shape {
            SequenceShape::Slot => WellFormedSequence::Leaf(member),
            SequenceShape::Pair(l, r) => Self::pair(Self::constant(l, member), Self::constant(r, member)),
        }
    }

    pub fn shape(&self) -> SequenceShape {
        match self {
            WellFormedSequence::Leaf(_) => SequenceShape::Slot,
            WellFormedSequence::Pair(l, r) => SequenceShape::Pair(Box::new(l.shape()), Box::new(r.shape())),
        }
    }

    /// Leaf member indices, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            WellFormedSequence::Leaf(v) => out.push(*v),
            WellFormedSequence::Pair(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WellFormedSequence::Leaf(v) => write!(f, "v{v}"),
            WellFormedSequence::Pair(l, r) => {
                f.write_str("<")?;
                l.fmt_inner(f)?;
                f.write_str(",")?;
                r.fmt_inner(f)?;
                f.write_str(">")
            }
        }
    }
}

/// `<v2>`, `<v2,v0>`, `<<v1,v2>,v3>`.
impl fmt::Display for WellFormedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WellFormedSequence::Leaf(v) => write!(f, "<v{v}>"),
            pair => pair.fmt_inner(f),
        }
    }
}

fn associated_count(members: usize, occurrences: usize) -> Option<u128> {
    (members as u128).checked_pow(u32::try_from(occurrences).ok()?)
}

fn check_cap(members: usize, occurrences: usize, cap: u64) -> Result<u64> {
    match associated_count(members, occurrences) {
        Some(n) if n <= cap as u128 => Ok(n as u64),
        required => Err(Error::EnumerationCap { required, cap }),
    }
}

/// Every sequence associated with a formula over a collection, in
/// lexicographic order of leaf tuples (leftmost leaf most significant).
#[derive(Clone, Debug)]
pub struct AssociatedSequences {
    shape: SequenceShape,
    members: usize,
    next: Option<Vec<usize>>,
    total: u64,
}

impl AssociatedSequences {
    /// `|C|^occurrences`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn shape(&self) -> &SequenceShape {
        &self.shape
    }
}

impl Iterator for AssociatedSequences {
    type Item = WellFormedSequence;

    fn next(&mut self) -> Option<Self::Item> {
        let leaves = self.next.as_mut()?;
        let current = WellFormedSequence::fill(&self.shape, leaves).expect("leaf count matches shape");
        if !advance(leaves, self.members) {
            self.next = None;
        }
        Some(current)
    }
}

/// Odometer step; returns the leftmost changed position, or `None` after the
/// last tuple.
#[inline]
fn advance_from(leaves: &mut [usize], members: usize) -> Option<usize> {
    for pos in (0..leaves.len()).rev() {
        leaves[pos] += 1;
        if leaves[pos] < members {
            return Some(pos);
        }
        leaves[pos] = 0;
    }
    None
}

fn advance(leaves: &mut [usize], members: usize) -> bool {
    advance_from(leaves, members).is_some()
}

pub fn enumerate_associated(formula: &Formula, collection: &ValuationCollection) -> Result<AssociatedSequences> {
    enumerate_associated_with_cap(formula, collection, ENUMERATION_CAP)
}

pub fn enumerate_associated_with_cap(
    formula: &Formula,
    collection: &ValuationCollection,
    cap: u64,
) -> Result<AssociatedSequences> {
    let occurrences = formula.atom_occurrences();
    let total = check_cap(collection.len(), occurrences, cap)?;
    Ok(AssociatedSequences {
        shape: shape_of(formula),
        members: collection.len(),
        next: Some(vec![0; occurrences]),
        total,
    })
}

/// Whether `sequence` justifies `formula`, with leaves read from `collection`.
pub fn justifies(sequence: &WellFormedSequence, formula: &Formula, collection: &ValuationCollection) -> Result<bool> {
    use WellFormedSequence::{Leaf, Pair};
    let mismatch = || Error::ShapeMismatch(formula.to_string());
    Ok(match (formula, sequence) {
        (Formula::Atom(a), Leaf(v)) => {
            let atom = collection.atom_index(a).ok_or_else(|| Error::UnknownAtom(a.clone()))?;
            if *v >= collection.len() {
                return Err(Error::UnknownLeaf(*v));
            }
            collection.value(*v, atom)
        }
        (Formula::Not(c), s) => !justifies(s, c, collection)?,
        (Formula::And(a, b), Pair(si, sj)) => {
            let a = justifies(si, a, collection)?;
            let b = justifies(sj, b, collection)?;
            a && b
        }
        (Formula::Or(a, b), Pair(si, sj)) => {
            let a = justifies(si, a, collection)?;
            let b = justifies(sj, b, collection)?;
            a || b
        }
        (Formula::Implies(a, b), Pair(si, sj)) => {
            let a = justifies(si, a, collection)?;
            let b = justifies(sj, b, collection)?;
            !a || b
        }
        _ => return Err(mismatch()),
    })
}

/// Product of the leaf weights.
pub fn weight(sequence: &WellFormedSequence, weights: &WeightDistribution) -> Result<Rational> {
    match sequence {
        WellFormedSequence::Leaf(v) => weights.weight_of(*v).cloned().ok_or(Error::UnknownLeaf(*v)),
        WellFormedSequence::Pair(l, r) => Ok(weight(l, weights)? * weight(r, weights)?),
    }
}

/// Total weight of a set of sequences.
pub fn measure_of_set(set: &BTreeSet<WellFormedSequence>, weights: &WeightDistribution) -> Result<Rational> {
    set.iter().try_fold(Rational::zero(), |acc, s| Ok(acc + weight(s, weights)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: u64,
    pub list_limit: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: ENUMERATION_CAP, list_limit: LIST_LIMIT }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub measure: Rational,
    /// `|A|`, the number of associated sequences.
    pub associated: u64,
    /// `|J|`, the number of justifying sequences.
    pub justifying: u64,
    /// Total weight of all associated sequences; 1 for a valid distribution.
    pub associated_mass: Rational,
    /// Leaf tuples of the justifying sequences in enumeration order, when
    /// `associated <= list_limit`.
    pub justifying_set: Option<Vec<Vec<usize>>>,
}

pub fn measure_oracle(formula: &Formula, weights: &WeightDistribution) -> Result<OracleReport> {
    measure_oracle_with(formula, weights, &OracleConfig::default())
}

pub fn measure_oracle_with(formula: &Formula, weights: &WeightDistribution, config: &OracleConfig) -> Result<OracleReport> {
    let mut reports = measure_oracle_many(formula, std::slice::from_ref(weights), config)?;
    Ok(reports.pop().expect("one report per distribution"))
}

/// Runs the oracle for several distributions over the same collection in a
/// single enumeration pass.
pub fn measure_oracle_many(
    formula: &Formula,
    distributions: &[WeightDistribution],
    config: &OracleConfig,
) -> Result<Vec<OracleReport>> {
    if distributions.is_empty() {
        return Ok(Vec::new());
    }
    OracleBatch::new(distributions)?.run(formula, config)
}

/// Validated distributions over one collection, prepared for repeated oracle
/// runs: each weight vector is stored as integer numerators over its common
/// denominator, so a sequence weight is an integer over `denom^occurrences`.
#[derive(Clone, Debug)]
pub struct OracleBatch {
    collection: ValuationCollection,
    denoms: Vec<BigInt>,
    numers: Vec<Vec<BigUint>>,
    /// Largest denominator, when it fits `u128`.
    max_denom: Option<u128>,
}

impl OracleBatch {
    pub fn new(distributions: &[WeightDistribution]) -> Result<Self> {
        let first = distributions
            .first()
            .ok_or_else(|| Error::Collection("oracle batch needs at least one distribution".into()))?;
        let collection = first.collection().clone();
        for d in distributions {
            if *d.collection() != collection {
                return Err(Error::Collection("oracle distributions must share one collection".into()));
            }
            let report = d.validate();
            if !report.is_ok() {
                return Err(Error::InvalidWeights(report));
            }
        }
        let (denoms, numers): (Vec<BigInt>, Vec<Vec<BigUint>>) = distributions.iter().map(common_denominator).unzip();
        let max_denom = denoms.iter().map(|d| d.to_u128()).try_fold(0u128, |acc, d| Some(acc.max(d?)));
        Ok(OracleBatch { collection, denoms, numers, max_denom })
    }

    pub fn collection(&self) -> &ValuationCollection {
        &self.collection
    }

    fn narrow<T>(&self, f: impl Fn(&BigUint) -> Option<T>) -> Vec<Vec<T>> {
        self.numers
            .iter()
            .map(|ns| ns.iter().map(|n| f(n).expect("numerator below denominator")).collect())
            .collect()
    }

    /// One report per distribution, in construction order.
    pub fn run(&self, formula: &Formula, config: &OracleConfig) -> Result<Vec<OracleReport>> {
        let collection = &self.collection;
        let program = Program::compile(formula, collection.atoms())?;
        let occurrences = program.occurrences();
        let associated = check_cap(collection.len(), occurrences, config.cap)?;

        // Sums of sequence numerators never exceed denom^occurrences.
        let scale_bound = self.max_denom.and_then(|d| d.checked_pow(occurrences as u32));
        let sums = match scale_bound {
            Some(b) if b <= u64::MAX as u128 => {
                enumerate_sums(&program, collection, self.narrow(BigUint::to_u64), associated, config)
            }
            Some(_) => enumerate_sums(&program, collection, self.narrow(BigUint::to_u128), associated, config),
            None => enumerate_sums(&program, collection, self.numers.clone(), associated, config),
        };

        Ok(self
            .denoms
            .iter()
            .zip(sums.per_distribution)
            .map(|(denom, (justified, total))| {
                let scale = num_traits::pow(denom.clone(), occurrences);
                OracleReport {
                    measure: Rational::new(justified, scale.clone()),
                    associated,
                    justifying: sums.justifying,
                    associated_mass: Rational::new(total, scale),
                    justifying_set: sums.listed.clone(),
                }
            })
            .collect())
    }
}

fn common_denominator(d: &WeightDistribution) -> (BigInt, Vec<BigUint>) {
    let denom = d.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let numers = d
        .weights()
        .iter()
        .map(|w| (w.numer() * (&denom / w.denom())).to_biguint().expect("validated weights are nonnegative"))
        .collect();
    (denom, numers)
}

struct Sums {
    /// (justifying, all associated) numerators per distribution
    per_distribution: Vec<(BigInt, BigInt)>,
    justifying: u64,
    listed: Option<Vec<Vec<usize>>>,
}

fn enumerate_sums<T>(
    program: &Program,
    collection: &ValuationCollection,
    numers: Vec<Vec<T>>,
    associated: u64,
    config: &OracleConfig,
) -> Sums
where
    T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T> + for<'a> AddAssign<&'a T> + Into<BigInt>,
{
    let occ = program.occurrences();
    let m = collection.len();
    let mut leaves = vec![0usize; occ];
    // prefix[d][k]: product of the first k+1 leaf numerators under distribution d
    let mut prefix: Vec<Vec<T>> = numers.iter().map(|_| vec![T::zero(); occ]).collect();
    let refresh = |prefix: &mut Vec<Vec<T>>, leaves: &[usize], from: usize| {
        for (p, ns) in prefix.iter_mut().zip(&numers) {
            for k in from..occ {
                let before = if k == 0 { T::one() } else { p[k - 1].clone() };
                p[k] = before * &ns[leaves[k]];
            }
        }
    };
    refresh(&mut prefix, &leaves, 0);

    let mut justified_sum: Vec<T> = numers.iter().map(|_| T::zero()).collect();
    let mut total_sum = justified_sum.clone();
    let mut justifying = 0u64;
    let mut listed = (associated <= config.list_limit).then(Vec::new);
    let mut stack = Vec::with_capacity(occ);

    loop {
        let ok = program.eval(&mut stack, |k, atom| collection.value(leaves[k], atom));
        for (d, p) in prefix.iter().enumerate() {
            let w = &p[occ - 1];
            total_sum[d] += w;
            if ok {
                justified_sum[d] += w;
            }
        }
        if ok {
            justifying += 1;
            if let Some(list) = listed.as_mut() {
                list.push(leaves.clone());
            }
        }
        match advance_from(&mut leaves, m) {
            Some(pos) => refresh(&mut prefix, &leaves, pos),
            None => break,
        }
    }

    Sums {
        per_distribution: justified_sum.into_iter().zip(total_sum).map(|(j, t)| (j.into(), t.into())).collect(),
        justifying,
        listed,
    }
}
