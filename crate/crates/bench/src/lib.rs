//! Inputs shared by the benchmarks in `benches/`.

use pml_core::rational::from_ratio;
use pml_core::{standard_collection, Formula, WeightDistribution};

/// Alternating `&`/`|`/`->` chain over `atoms` with `occurrences` leaves,
/// every other leaf negated.
pub fn chain(atoms: &[&str], occurrences: usize) -> Formula {
    assert!(occurrences >= 1 && !atoms.is_empty());
    let literal = |i: usize| {
        let a = Formula::atom(atoms[i % atoms.len()]);
        if i % 2 == 1 {
            Formula::not(a)
        } else {
            a
        }
    };
    (1..occurrences).fold(literal(0), |acc, i| match i % 3 {
        0 => Formula::and(acc, literal(i)),
        1 => Formula::or(acc, literal(i)),
        _ => Formula::implies(acc, literal(i)),
    })
}

/// Weights `1..=2^n` normalized over the standard collection.
pub fn skewed(atoms: &[&str]) -> WeightDistribution {
    let c = standard_collection(atoms).expect("small atom set");
    let n = c.len() as i64;
    let total = n * (n + 1) / 2;
    WeightDistribution::new(c, (1..=n).map(|k| from_ratio(k, total)).collect()).expect("sums to one")
}
