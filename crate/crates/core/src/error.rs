use thiserror::Error;

use crate::formula::ParseError;
use crate::valuation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A formula mentions an atom the valuation or distribution does not declare.
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("{count} atoms exceeds the cap of {cap}")]
    AtomCap { count: usize, cap: usize },

    /// `|C|^occurrences` is above the enumeration cap. `required` is `None`
    /// when the count does not even fit in 128 bits.
    #[error("sequence enumeration needs {} sequences, cap is {cap}; use the compositional evaluator", fmt_required(.required))]
    EnumerationCap { required: Option<u128>, cap: u64 },

    #[error("invalid valuation collection: {0}")]
    Collection(String),

    #[error("invalid weight distribution: {0}")]
    InvalidWeights(ValidationReport),

    #[error("malformed weights file: {0}")]
    WeightsFile(String),

    #[error("malformed rational `{0}`")]
    Rational(String),

    #[error("sequence does not have the shape of `{0}`")]
    ShapeMismatch(String),

    #[error("sequence leaf v{0} is not a member of the collection")]
    UnknownLeaf(usize),

    #[error("threshold {0} is outside (0, 1]")]
    Threshold(String),

    #[error("surface grid needs at least 2 steps, got {0}")]
    GridSteps(usize),

    #[error("no tautology found within {0} draws")]
    GenerationBudget(usize),
}

fn fmt_required(required: &Option<u128>) -> String {
    match required {
        Some(n) => n.to_string(),
        None => "more than 2^128".to_string(),
    }
}
