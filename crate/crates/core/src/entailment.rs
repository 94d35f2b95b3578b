//! Threshold modus ponens and the entailment surface.
//!
//! With `p = m(P)` and `c = m(P -> Q)`, the implication rule gives
//! `c = 1 - p + p q`, so the conclusion measure is fixed exactly:
//! `q = (p + c - 1) / p`. Pairs with `p = 0` or `c < 1 - p` are not
//! realised by any distribution.

use std::io::{self, Write};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::measure::{measure, MeasureValue};
use crate::rational::{format_decimal12, Rational};
use crate::valuation::WeightDistribution;

/// Conclusion measure implied by premise measure `p` and implication measure
/// `c`, or `None` where no distribution realises the pair (including values
/// outside `[0, 1]`).
pub fn mp_conclusion_measure(p: &Rational, c: &Rational) -> Option<Rational> {
    let zero = Rational::zero();
    let one = Rational::one();
    if *p <= zero || *p > one || *c < zero || *c > one || *c < &one - p {
        return None;
    }
    Some((p + c - one) / p)
}

/// Worst-case conclusion measure when both premises are at least `k`:
/// `max(0, (2k - 1) / k)`, attained at `p = c = k`.
pub fn mp_bound(k: &Rational) -> Result<Rational> {
    check_threshold(k)?;
    let two = Rational::from_integer(2.into());
    let q = (two * k - Rational::one()) / k;
    Ok(if q < Rational::zero() { Rational::zero() } else { q })
}

fn check_threshold(k: &Rational) -> Result<()> {
    if *k <= Rational::zero() || *k > Rational::one() {
        return Err(Error::Threshold(k.to_string()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentQuery {
    premise: Formula,
    conclusion: Formula,
    threshold: Rational,
}

impl EntailmentQuery {
    pub fn new(premise: Formula, conclusion: Formula, threshold: Rational) -> Result<Self> {
        check_threshold(&threshold)?;
        Ok(EntailmentQuery { premise, conclusion, threshold })
    }

    pub fn premise(&self) -> &Formula {
        &self.premise
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// `P -> Q`
    pub fn implication(&self) -> Formula {
        Formula::implies(self.premise.clone(), self.conclusion.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Premises and conclusion all reach the threshold.
    Holds,
    /// At least one premise is below the threshold; nothing is claimed.
    PremisesBelowThreshold,
    /// Premises reach the threshold, the conclusion does not.
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::PremisesBelowThreshold => "premises below threshold",
            Verdict::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentReport {
    pub premise: MeasureValue,
    pub implication: MeasureValue,
    pub conclusion: MeasureValue,
    pub premises_meet_k: bool,
    pub conclusion_meets_k: bool,
}

impl EntailmentReport {
    pub fn verdict(&self) -> Verdict {
        match (self.premises_meet_k, self.conclusion_meets_k) {
            (false, _) => Verdict::PremisesBelowThreshold,
            (true, true) => Verdict::Holds,
            (true, false) => Verdict::Fails,
        }
    }
}

/// Measures `P`, `P -> Q` and `Q`; "meets" means `>= k`.
pub fn entails_at(query: &EntailmentQuery, weights: &WeightDistribution) -> Result<EntailmentReport> {
    let premise = measure(&query.premise, weights)?;
    let implication = measure(&query.implication(), weights)?;
    let conclusion = measure(&query.conclusion, weights)?;
    let k = &query.threshold;
    Ok(EntailmentReport {
        premises_meet_k: premise.value() >= k && implication.value() >= k,
        conclusion_meets_k: conclusion.value() >= k,
        premise,
        implication,
        conclusion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSample {
    pub p: Rational,
    pub c: Rational,
    /// `None` where infeasible.
    pub q: Option<Rational>,
}

impl SurfaceSample {
    pub fn feasible(&self) -> bool {
        self.q.is_some()
    }
}

/// `steps x steps` grid over `[0,1]^2`, `p` major, `c` minor.
pub fn surface_grid(steps: usize) -> Result<Vec<SurfaceSample>> {
    if steps < 2 {
        return Err(Error::GridSteps(steps));
    }
    let denom = steps - 1;
    let at = |i: usize| Rational::new(i.into(), denom.into());
    Ok((0..steps)
        .flat_map(|i| (0..steps).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (p, c) = (at(i), at(j));
            let q = mp_conclusion_measure(&p, &c);
            SurfaceSample { p, c, q }
        })
        .collect())
}

/// CSV with header `p,c,q,feasible`; decimals with up to 12 significant
/// digits, infeasible rows have an empty `q` and `feasible=0`.
pub fn write_surface_csv<W: Write>(samples: &[SurfaceSample], mut out: W) -> io::Result<()> {
    writeln!(out, "p,c,q,feasible")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            format_decimal12(&s.p),
            format_decimal12(&s.c),
            s.q.as_ref().map(format_decimal12).unwrap_or_default(),
            u8::from(s.feasible())
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleRecord {
    p: String,
    c: String,
    q: Option<String>,
    feasible: bool,
}

/// JSON array with the same fields as the CSV export.
pub fn surface_json(samples: &[SurfaceSample]) -> String {
    let records: Vec<SampleRecord> = samples
        .iter()
        .map(|s| SampleRecord {
            p: format_decimal12(&s.p),
            c: format_decimal12(&s.c),
            q: s.q.as_ref().map(format_decimal12),
            feasible: s.feasible(),
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("samples serialize")
}
