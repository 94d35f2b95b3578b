//! Truth valuations, valuation collections and basic weight distributions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::is_identifier;
use crate::rational::{format_exact, parse_rational, Rational};

/// Default atom cap for [`standard_collection`].
pub const STANDARD_ATOM_CAP: usize = 10;

/// Members are stored as bitmasks, so a collection declares at most this many atoms.
pub const MAX_COLLECTION_ATOMS: usize = 63;

/// Total assignment of truth values to a set of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValuation {
    values: BTreeMap<String, bool>,
}

impl TruthValuation {
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        TruthValuation { values: pairs.into_iter().map(|(a, b)| (a.into(), b)).collect() }
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.values.get(atom).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(a, v)| (a.as_str(), *v))
    }
}

/// Nonempty ordered list of distinct valuations over one ordered atom set.
///
/// Member `i` is written `v{i}` in diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCollection {
    atoms: Vec<String>,
    /// bit `j` of `members[i]` is the value of `atoms[j]` under member `i`
    members: Vec<u64>,
}

impl ValuationCollection {
    /// Builds a custom collection. Every member must assign exactly the
    /// declared atoms; duplicates are rejected.
    pub fn new(atoms: Vec<String>, members: &[TruthValuation]) -> Result<Self> {
        check_atoms(&atoms)?;
        let masks = members
            .iter()
            .map(|v| {
                if v.values.len() != atoms.len() {
                    return Err(Error::Collection(format!(
                        "valuation assigns {} atoms, collection declares {}",
                        v.values.len(),
                        atoms.len()
                    )));
                }
                atoms.iter().enumerate().try_fold(0u64, |mask, (j, atom)| match v.get(atom) {
                    Some(true) => Ok(mask | 1 << j),
                    Some(false) => Ok(mask),
                    None => Err(Error::Collection(format!("valuation does not assign `{atom}`"))),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(atoms, masks)
    }

    /// Builds a collection from bitstrings in atom order (`"10"` makes the
    /// first atom true and the second false).
    pub fn from_bitstrings<S: AsRef<str>>(atoms: Vec<String>, members: &[S]) -> Result<Self> {
        check_atoms(&atoms)?;
        let masks = members
            .iter()
            .map(|b| {
                parse_bitstring(b.as_ref(), atoms.len()).ok_or_else(|| {
                    Error::Collection(format!("`{}` is not a {}-bit valuation", b.as_ref(), atoms.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(atoms, masks)
    }

    fn from_masks(atoms: Vec<String>, members: Vec<u64>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Collection("collection is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for &m in &members {
            if !seen.insert(m) {
                return Err(Error::Collection(format!(
                    "duplicate valuation {}",
                    mask_to_bitstring(m, atoms.len())
                )));
            }
        }
        Ok(ValuationCollection { atoms, members })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Value of `atoms()[atom]` under member `member`.
    #[inline]
    pub fn value(&self, member: usize, atom: usize) -> bool {
        self.members[member] >> atom & 1 == 1
    }

    pub fn member(&self, index: usize) -> Option<TruthValuation> {
        let mask = *self.members.get(index)?;
        Some(TruthValuation::from_pairs(
            self.atoms.iter().enumerate().map(|(j, a)| (a.clone(), mask >> j & 1 == 1)),
        ))
    }

    pub fn members(&self) -> impl Iterator<Item = TruthValuation> + '_ {
        (0..self.len()).map(|i| self.member(i).expect("index in range"))
    }

    pub fn index_of(&self, valuation: &TruthValuation) -> Option<usize> {
        let other = ValuationCollection::new(self.atoms.clone(), std::slice::from_ref(valuation)).ok()?;
        self.members.iter().position(|&m| m == other.members[0])
    }

    pub fn index_of_bitstring(&self, bits: &str) -> Option<usize> {
        let mask = parse_bitstring(bits, self.atoms.len())?;
        self.members.iter().position(|&m| m == mask)
    }

    pub fn bitstring(&self, index: usize) -> String {
        mask_to_bitstring(self.members[index], self.atoms.len())
    }
}

fn check_atoms(atoms: &[String]) -> Result<()> {
    if atoms.len() > MAX_COLLECTION_ATOMS {
        return Err(Error::AtomCap { count: atoms.len(), cap: MAX_COLLECTION_ATOMS });
    }
    let mut seen = BTreeSet::new();
    for a in atoms {
        if !is_identifier(a) {
            return Err(Error::Collection(format!("`{a}` is not a valid atom name")));
        }
        if !seen.insert(a) {
            return Err(Error::Collection(format!("atom `{a}` declared twice")));
        }
    }
    Ok(())
}

fn parse_bitstring(bits: &str, width: usize) -> Option<u64> {
    if bits.len() != width {
        return None;
    }
    bits.bytes().enumerate().try_fold(0u64, |mask, (j, b)| match b {
        b'1' => Some(mask | 1 << j),
        b'0' => Some(mask),
        _ => None,
    })
}

fn mask_to_bitstring(mask: u64, width: usize) -> String {
    (0..width).map(|j| if mask >> j & 1 == 1 { '1' } else { '0' }).collect()
}

/// All `2^n` valuations over `atoms`, in binary counting order with the
/// first atom as the most significant bit. `v0` is all-false.
pub fn standard_collection<S: AsRef<str>>(atoms: &[S]) -> Result<ValuationCollection> {
    standard_collection_with_cap(atoms, STANDARD_ATOM_CAP)
}

pub fn standard_collection_with_cap<S: AsRef<str>>(atoms: &[S], cap: usize) -> Result<ValuationCollection> {
    let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_string()).collect();
    if atoms.is_empty() {
        return Err(Error::Collection("a standard collection needs at least one atom".into()));
    }
    let cap = cap.min(MAX_COLLECTION_ATOMS);
    if atoms.len() > cap {
        return Err(Error::AtomCap { count: atoms.len(), cap });
    }
    check_atoms(&atoms)?;
    let n = atoms.len();
    let members = (0u64..1 << n)
        .map(|k| (0..n).fold(0u64, |mask, j| mask | (k >> (n - 1 - j) & 1) << j))
        .collect();
    ValuationCollection::from_masks(atoms, members)
}

/// Basic weight distribution over a collection.
///
/// A distribution built with [`WeightDistribution::new`] or
/// [`uniform_weights`] always satisfies the invariants. The `unchecked`
/// constructors exist so that malformed input can be reported by
/// [`WeightDistribution::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    collection: ValuationCollection,
    weights: Vec<Rational>,
    /// weights keyed by valuations outside the collection
    stray: Vec<(String, Rational)>,
}

impl WeightDistribution {
    /// `weights[i]` is the weight of member `i`.
    pub fn new(collection: ValuationCollection, weights: Vec<Rational>) -> Result<Self> {
        Self::unchecked(collection, weights).checked()
    }

    pub fn unchecked(collection: ValuationCollection, weights: Vec<Rational>) -> Self {
        WeightDistribution { collection, weights, stray: Vec::new() }
    }

    /// Weights keyed by bitstring. Members without an entry get weight 0;
    /// entries that name no member are kept and reported by `validate`.
    pub fn from_bitstrings_unchecked<I, S>(collection: ValuationCollection, entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: AsRef<str>,
    {
        let mut weights = vec![Rational::zero(); collection.len()];
        let mut stray = Vec::new();
        for (key, w) in entries {
            match collection.index_of_bitstring(key.as_ref()) {
                Some(i) => weights[i] = w,
                None => stray.push((key.as_ref().to_string(), w)),
            }
        }
        WeightDistribution { collection, weights, stray }
    }

    fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidWeights(report))
        }
    }

    pub fn collection(&self) -> &ValuationCollection {
        &self.collection
    }

    pub fn atoms(&self) -> &[String] {
        self.collection.atoms()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_of(&self, member: usize) -> Option<&Rational> {
        self.weights.get(member)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.weights.len() != self.collection.len() {
            violations.push(Violation::LengthMismatch {
                members: self.collection.len(),
                weights: self.weights.len(),
            });
        }
        let one = Rational::one();
        for (i, w) in self.weights.iter().enumerate().take(self.collection.len()) {
            if *w < Rational::zero() {
                violations.push(Violation::NegativeWeight { member: i, weight: w.clone() });
            } else if *w > one {
                violations.push(Violation::AboveOne { member: i, weight: w.clone() });
            }
        }
        for (key, _) in &self.stray {
            violations.push(Violation::UnknownValuation { valuation: key.clone() });
        }
        let sum: Rational = self.weights.iter().sum();
        if sum != one {
            violations.push(Violation::SumNotOne { sum });
        }
        ValidationReport { violations }
    }

    /// Total weight of the members that make `atom` true.
    pub fn atom_marginal(&self, atom: &str) -> Result<Rational> {
        let j = self.collection.atom_index(atom).ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.collection.value(i, j))
            .map(|(_, w)| w)
            .sum())
    }

    /// Reads the JSON weights format:
    ///
    /// ```json
    /// { "atoms": ["A", "B"],
    ///   "weights": { "00": "1/4", "01": "1/4", "10": "1/4", "11": "1/4" } }
    /// ```
    ///
    /// Keys are bitstrings in atom order; values are `"p/q"` or decimal
    /// strings (JSON numbers are read through their decimal text). An
    /// optional `"collection"` list of bitstrings restricts the collection;
    /// otherwise it is the standard collection over `atoms`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: WeightsFile =
            serde_json::from_str(text).map_err(|e| Error::WeightsFile(e.to_string()))?;
        let n = file.atoms.len();
        let collection = match &file.collection {
            Some(members) => ValuationCollection::from_bitstrings(file.atoms.clone(), members),
            None => standard_collection_with_cap(&file.atoms, MAX_COLLECTION_ATOMS),
        }
        .map_err(|e| Error::WeightsFile(e.to_string()))?;

        let mut entries = Vec::with_capacity(file.weights.len());
        for (key, value) in &file.weights {
            if parse_bitstring(key, n).is_none() {
                return Err(Error::WeightsFile(format!("`{key}` is not a {n}-bit valuation key")));
            }
            let text = match value {
                WeightValue::Text(s) => s.clone(),
                WeightValue::Number(x) => x.to_string(),
            };
            let w = parse_rational(&text)
                .map_err(|_| Error::WeightsFile(format!("weight `{text}` for `{key}` is not a rational")))?;
            entries.push((key.clone(), w));
        }
        Self::from_bitstrings_unchecked(collection, entries).checked()
    }

    /// Inverse of [`WeightDistribution::from_json_str`]; weights are exact
    /// rational strings and `"collection"` is written only for non-standard
    /// collections.
    pub fn to_json_string(&self) -> String {
        let c = &self.collection;
        let standard = standard_collection_with_cap(c.atoms(), MAX_COLLECTION_ATOMS)
            .map(|s| s == *c)
            .unwrap_or(false);
        let file = WeightsFile {
            atoms: c.atoms().to_vec(),
            weights: (0..c.len())
                .map(|i| (c.bitstring(i), WeightValue::Text(format_exact(&self.weights[i]))))
                .collect(),
            collection: (!standard).then(|| (0..c.len()).map(|i| c.bitstring(i)).collect()),
        };
        serde_json::to_string_pretty(&file).expect("weights serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    atoms: Vec<String>,
    weights: BTreeMap<String, WeightValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    collection: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightValue {
    Text(String),
    Number(serde_json::Number),
}

/// Each weight is `1/|C|`.
pub fn uniform_weights(collection: &ValuationCollection) -> WeightDistribution {
    let w = Rational::new(1.into(), collection.len().into());
    WeightDistribution::unchecked(collection.clone(), vec![w; collection.len()])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NegativeWeight { member: usize, weight: Rational },
    AboveOne { member: usize, weight: Rational },
    SumNotOne { sum: Rational },
    UnknownValuation { valuation: String },
    LengthMismatch { members: usize, weights: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeWeight { member, weight } => write!(f, "v{member} has negative weight {weight}"),
            Violation::AboveOne { member, weight } => write!(f, "v{member} has weight {weight} > 1"),
            Violation::SumNotOne { sum } => write!(f, "weights sum to {sum}, not 1"),
            Violation::UnknownValuation { valuation } => {
                write!(f, "weight given for valuation {valuation} outside the collection")
            }
            Violation::LengthMismatch { members, weights } => {
                write!(f, "{weights} weights for {members} valuations")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_ratio;

    fn ab() -> ValuationCollection {
        standard_collection(&["A", "B"]).unwrap()
    }

    fn weights(c: &ValuationCollection, w: &[(i64, i64)]) -> WeightDistribution {
        WeightDistribution::unchecked(c.clone(), w.iter().map(|&(n, d)| from_ratio(n, d)).collect())
    }

    #[test]
    fn standard_order_matches_binary_counting() {
        let c = ab();
        let expect = [(false, false), (false, true), (true, false), (true, true)];
        assert_eq!(c.len(), 4);
        for (i, (a, b)) in expect.into_iter().enumerate() {
            let v = c.member(i).unwrap();
            assert_eq!((v.get("A"), v.get("B")), (Some(a), Some(b)), "v{i}");
        }
        assert_eq!(c.bitstring(1), "01");
        assert_eq!(c.bitstring(2), "10");

        let one = standard_collection(&["A"]).unwrap();
        assert_eq!(one.member(0).unwrap().get("A"), Some(false));
        assert_eq!(one.member(1).unwrap().get("A"), Some(true));
    }

    #[test]
    fn standard_collection_rejections() {
        let empty: [&str; 0] = [];
        assert!(matches!(standard_collection(&empty), Err(Error::Collection(_))));
        let many: Vec<String> = (0..11).map(|i| format!("X{i}")).collect();
        assert_eq!(standard_collection(&many), Err(Error::AtomCap { count: 11, cap: 10 }));
        assert!(matches!(standard_collection(&["A", "A"]), Err(Error::Collection(_))));
    }

    #[test]
    fn standard_collection_is_complete_and_distinct() {
        for n in 1..=6 {
            let atoms: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
            let c = standard_collection(&atoms).unwrap();
            assert_eq!(c.len(), 1 << n);
            let distinct: BTreeSet<_> = c.members().collect();
            assert_eq!(distinct.len(), 1 << n);
        }
    }

    #[test]
    fn custom_collections() {
        let c = ValuationCollection::from_bitstrings(vec!["A".into(), "B".into()], &["11", "00"]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.index_of(&TruthValuation::from_pairs([("A", false), ("B", false)])), Some(1));
        assert_eq!(c.index_of(&TruthValuation::from_pairs([("A", true), ("B", false)])), None);
        let dup = ValuationCollection::from_bitstrings(vec!["A".into()], &["1", "1"]);
        assert!(matches!(dup, Err(Error::Collection(_))));
        let empty: [&str; 0] = [];
        assert!(ValuationCollection::from_bitstrings(vec!["A".into()], &empty).is_err());
        let partial = TruthValuation::from_pairs([("A", true)]);
        assert!(ValuationCollection::new(vec!["A".into(), "B".into()], &[partial]).is_err());
    }

    #[test]
    fn uniform_weights_are_exact() {
        let four = uniform_weights(&ab());
        assert!(four.weights().iter().all(|w| *w == from_ratio(1, 4)));
        assert!(four.validate().is_ok());

        let single = ValuationCollection::from_bitstrings(vec!["A".into()], &["1"]).unwrap();
        assert_eq!(uniform_weights(&single).weights(), &[from_ratio(1, 1)]);

        let three = ValuationCollection::from_bitstrings(vec!["A".into(), "B".into()], &["00", "01", "11"]).unwrap();
        let u = uniform_weights(&three);
        assert!(u.weights().iter().all(|w| *w == from_ratio(1, 3)));
        assert_eq!(u.weights().iter().sum::<Rational>(), from_ratio(1, 1));
        assert!(u.validate().is_ok());
    }

    #[test]
    fn validation_reports_each_violation() {
        let c = ab();
        let neg = weights(&c, &[(1, 2), (1, 2), (1, 2), (-1, 2)]);
        assert_eq!(
            neg.validate().violations,
            vec![Violation::NegativeWeight { member: 3, weight: from_ratio(-1, 2) }]
        );

        let short = weights(&c, &[(1, 2), (1, 4), (1, 8), (1, 16)]);
        assert_eq!(short.validate().violations, vec![Violation::SumNotOne { sum: from_ratio(15, 16) }]);

        let stray = WeightDistribution::from_bitstrings_unchecked(
            ValuationCollection::from_bitstrings(vec!["A".into()], &["1"]).unwrap(),
            [("1", from_ratio(1, 1)), ("0", from_ratio(0, 1))],
        );
        assert_eq!(
            stray.validate().violations,
            vec![Violation::UnknownValuation { valuation: "0".into() }]
        );

        let big = weights(&c, &[(3, 2), (-1, 2), (0, 1), (0, 1)]);
        assert_eq!(big.validate().violations.len(), 2);
        assert!(WeightDistribution::new(c, vec![from_ratio(1, 1)]).is_err());
    }

    #[test]
    fn atom_marginals() {
        let c = ab();
        assert_eq!(uniform_weights(&c).atom_marginal("A").unwrap(), from_ratio(1, 2));
        let all_a = weights(&c, &[(0, 1), (0, 1), (7, 10), (3, 10)]);
        assert_eq!(all_a.atom_marginal("A").unwrap(), from_ratio(1, 1));
        let skew = weights(&c, &[(1, 10), (2, 10), (3, 10), (4, 10)]);
        // v1 + v3
        assert_eq!(skew.atom_marginal("B").unwrap(), from_ratio(6, 10));
        assert_eq!(skew.atom_marginal("A").unwrap(), from_ratio(7, 10));
        assert_eq!(skew.atom_marginal("C"), Err(Error::UnknownAtom("C".into())));
    }

    #[test]
    fn weights_file_round_trip() {
        let text = r#"{ "atoms": ["A","B"], "weights": { "00": "1/4", "01": "0.25", "10": 0.25, "11": "1/4" } }"#;
        let d = WeightDistribution::from_json_str(text).unwrap();
        assert_eq!(d, uniform_weights(&ab()));
        assert_eq!(WeightDistribution::from_json_str(&d.to_json_string()).unwrap(), d);

        let custom = r#"{ "atoms": ["A","B"], "collection": ["11","00"], "weights": { "11": "3/4", "00": "1/4" } }"#;
        let d = WeightDistribution::from_json_str(custom).unwrap();
        assert_eq!(d.collection().len(), 2);
        assert_eq!(d.atom_marginal("A").unwrap(), from_ratio(3, 4));
        assert_eq!(WeightDistribution::from_json_str(&d.to_json_string()).unwrap(), d);
    }

    #[test]
    fn weights_file_errors() {
        let missing = r#"{ "atoms": ["A","B"], "weights": { "00": "1/2", "01": "1/4" } }"#;
        match WeightDistribution::from_json_str(missing) {
            Err(Error::InvalidWeights(r)) => {
                assert_eq!(r.violations, vec![Violation::SumNotOne { sum: from_ratio(3, 4) }])
            }
            other => panic!("{other:?}"),
        }
        let outside = r#"{ "atoms": ["A"], "collection": ["1"], "weights": { "1": "1", "0": "0" } }"#;
        assert!(matches!(WeightDistribution::from_json_str(outside), Err(Error::InvalidWeights(_))));
        for bad in [
            r#"{ "atoms": ["A"], "weights": { "2": "1" } }"#,
            r#"{ "atoms": ["A"], "weights": { "10": "1" } }"#,
            r#"{ "atoms": ["A"], "weights": { "1": "one" } }"#,
            r#"{ "atoms": [], "weights": {} }"#,
            r#"{ "atoms": ["A"], "weights": { "1": "1" }, "extra": 1 }"#,
            r#"not json"#,
        ] {
            assert!(matches!(WeightDistribution::from_json_str(bad), Err(Error::WeightsFile(_))), "{bad}");
        }
    }
}
