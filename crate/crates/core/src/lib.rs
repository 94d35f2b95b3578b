//! Propositional measure logic.
//!
//! Every propositional formula gets a measure in `[0, 1]`, computed from a
//! weight distribution over a collection of truth valuations. Two routes are
//! provided and kept in agreement by the test suites:
//!
//! * [`sequence`] enumerates the well-formed sequences associated with a
//!   formula and sums the weight of those that justify it. This is the
//!   definitional route and is exponential in formula size.
//! * [`measure`] evaluates the same quantity by structural recursion, linear
//!   in formula size.
//!
//! [`entailment`] builds threshold modus ponens and the entailment surface on
//! top of [`measure`]; [`soundness`] provides formula generators and the
//! positivity checks for classical tautologies.
//!
//! All arithmetic is exact ([`Rational`]).

pub mod entailment;
pub mod error;
pub mod formula;
pub mod measure;
pub mod rational;
pub mod sequence;
pub mod soundness;
pub mod valuation;

pub use entailment::{
    entails_at, mp_bound, mp_conclusion_measure, surface_grid, EntailmentQuery, EntailmentReport,
    SurfaceSample,
};
pub use error::{Error, Result};
pub use formula::{is_tautology, Formula, ParseError};
pub use measure::{measure, measure_float, MeasureValue};
pub use rational::Rational;
pub use sequence::{
    enumerate_associated, justifies, measure_of_set, measure_oracle, shape_of, OracleBatch, OracleConfig,
    OracleReport, SequenceShape, WellFormedSequence,
};
pub use soundness::{
    completeness_counterexample, random_formula, random_tautology, soundness_check,
    SoundnessReport,
};
pub use valuation::{
    standard_collection, uniform_weights, TruthValuation, ValidationReport, ValuationCollection,
    Violation, WeightDistribution,
};
