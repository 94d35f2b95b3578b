//! Propositional formulas: syntax tree, concrete syntax, classical semantics.

mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use parse::{parse, ParseError};

use crate::error::{Error, Result};
use crate::valuation::TruthValuation;

/// Default atom cap for brute-force truth tables.
pub const TAUTOLOGY_ATOM_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Formula {
    /// Panics if `name` is not an identifier (`[A-Za-z_][A-Za-z0-9_]*`).
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_identifier(&name), "`{name}` is not a valid atom name");
        Formula::Atom(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Self {
        Formula::Not(Box::new(child))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    /// Sorted, duplicate-free atom names.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
            Formula::Not(c) => c.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of atom leaves. Negation adds none.
    pub fn atom_occurrences(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(c) => c.atom_occurrences(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.atom_occurrences() + r.atom_occurrences()
            }
        }
    }

    /// Nesting depth; an atom has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(c) => 1 + c.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Negation normal form: negations only on atoms.
    ///
    /// Implications are kept where they occur positively; a negated
    /// implication `!(a -> b)` becomes `a & !b`. Every rewrite preserves the
    /// atom leaves and their order.
    pub fn nnf(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::And(l, r) => Formula::and(l.nnf(), r.nnf()),
            Formula::Or(l, r) => Formula::or(l.nnf(), r.nnf()),
            Formula::Implies(l, r) => Formula::implies(l.nnf(), r.nnf()),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(_) => self.clone(),
                Formula::Not(c) => c.nnf(),
                Formula::And(l, r) => Formula::or(l.negated_nnf(), r.negated_nnf()),
                Formula::Or(l, r) => Formula::and(l.negated_nnf(), r.negated_nnf()),
                Formula::Implies(l, r) => Formula::and(l.nnf(), r.negated_nnf()),
            },
        }
    }

    fn negated_nnf(&self) -> Formula {
        Formula::not(self.clone()).nnf()
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(c) => matches!(c.as_ref(), Formula::Atom(_)),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_nnf() && r.is_nnf()
            }
        }
    }

    /// Classical truth-table value under `v`.
    pub fn eval_classical(&self, v: &TruthValuation) -> Result<bool> {
        Ok(match self {
            Formula::Atom(name) => v.get(name).ok_or_else(|| Error::UnknownAtom(name.clone()))?,
            Formula::Not(c) => !c.eval_classical(v)?,
            Formula::And(l, r) => l.eval_classical(v)? & r.eval_classical(v)?,
            Formula::Or(l, r) => l.eval_classical(v)? | r.eval_classical(v)?,
            Formula::Implies(l, r) => !l.eval_classical(v)? | r.eval_classical(v)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            Formula::Atom(_) => 5,
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let paren = self.precedence() < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(name) => f.write_str(name)?,
            Formula::Not(c) => {
                f.write_str("!")?;
                c.render(f, 4)?;
            }
            // & and | associate to the left, -> to the right.
            Formula::And(l, r) => {
                l.render(f, 3)?;
                f.write_str(" & ")?;
                r.render(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.render(f, 2)?;
                f.write_str(" | ")?;
                r.render(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.render(f, 2)?;
                f.write_str(" -> ")?;
                r.render(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// ASCII concrete syntax with the fewest parentheses that parse back to the
/// same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse(s)
    }
}

/// Brute-force truth table over the formula's own atoms, capped at
/// [`TAUTOLOGY_ATOM_CAP`] atoms.
pub fn is_tautology(formula: &Formula) -> Result<bool> {
    is_tautology_with_cap(formula, TAUTOLOGY_ATOM_CAP)
}

pub fn is_tautology_with_cap(formula: &Formula, cap: usize) -> Result<bool> {
    let atoms: Vec<String> = formula.atoms().into_iter().collect();
    if atoms.len() > cap || atoms.len() > 63 {
        return Err(Error::AtomCap { count: atoms.len(), cap: cap.min(63) });
    }
    let program = Program::compile(formula, &atoms)?;
    let mut stack = Vec::new();
    Ok((0u64..1 << atoms.len())
        .all(|mask| program.eval(&mut stack, |_, atom| mask >> atom & 1 == 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Atom(u32),
    Not,
    And,
    Or,
    Implies,
}

/// Postfix form of a formula with atoms resolved to indices. Atom ops appear
/// in leaf order, so the `k`-th atom op is the `k`-th sequence leaf.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    ops: Vec<Op>,
    occurrences: usize,
}

impl Program {
    pub(crate) fn compile(formula: &Formula, atoms: &[String]) -> Result<Self> {
        let mut ops = Vec::new();
        Self::emit(formula, atoms, &mut ops)?;
        let occurrences = ops.iter().filter(|op| matches!(op, Op::Atom(_))).count();
        Ok(Program { ops, occurrences })
    }

    fn emit(formula: &Formula, atoms: &[String], ops: &mut Vec<Op>) -> Result<()> {
        match formula {
            Formula::Atom(name) => {
                let idx = atoms
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| Error::UnknownAtom(name.clone()))?;
                ops.push(Op::Atom(idx as u32));
            }
            Formula::Not(c) => {
                Self::emit(c, atoms, ops)?;
                ops.push(Op::Not);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                Self::emit(l, atoms, ops)?;
                Self::emit(r, atoms, ops)?;
                ops.push(match formula {
                    Formula::And(..) => Op::And,
                    Formula::Or(..) => Op::Or,
                    _ => Op::Implies,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn occurrences(&self) -> usize {
        self.occurrences
    }

    /// `leaf(k, atom)` answers whether atom `atom` holds at the `k`-th leaf.
    pub(crate) fn eval(&self, stack: &mut Vec<bool>, mut leaf: impl FnMut(usize, usize) -> bool) -> bool {
        stack.clear();
        let mut k = 0;
        for op in &self.ops {
            match *op {
                Op::Atom(a) => {
                    stack.push(leaf(k, a as usize));
                    k += 1;
                }
                Op::Not => {
                    let top = stack.last_mut().expect("well-formed program");
                    *top = !*top;
                }
                Op::And | Op::Or | Op::Implies => {
                    let r = stack.pop().expect("well-formed program");
                    let l = stack.last_mut().expect("well-formed program");
                    *l = match op {
                        Op::And => *l && r,
                        Op::Or => *l || r,
                        _ => !*l || r,
                    };
                }
            }
        }
        stack.pop().expect("well-formed program")
    }
}
