use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use pml_core::entailment::{surface_json, write_surface_csv};
use pml_core::rational::{format_decimal12, parse_rational, Rational};
use pml_core::sequence::{measure_oracle_with, OracleConfig, LIST_LIMIT};
use pml_core::{
    entails_at, is_tautology, measure, soundness_check, standard_collection, surface_grid, uniform_weights,
    EntailmentQuery, Error, Formula, MeasureValue, WeightDistribution,
};

use crate::Format;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::Rational(_) | Error::Threshold(_) | Error::GridSteps(_) => 2,
                Error::InvalidWeights(_) | Error::WeightsFile(_) | Error::Collection(_) => 3,
                Error::UnknownAtom(_) | Error::UnknownLeaf(_) | Error::ShapeMismatch(_) => 4,
                Error::AtomCap { .. } | Error::EnumerationCap { .. } | Error::GenerationBudget(_) => 5,
            },
            CliError::Io { .. } => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightsSource {
    Uniform,
    File(PathBuf),
}

impl WeightsSource {
    pub fn from_arg(arg: &str) -> Self {
        if arg == "uniform" {
            WeightsSource::Uniform
        } else {
            WeightsSource::File(PathBuf::from(arg))
        }
    }

    /// A file overrides both atom set and weights; `uniform` covers exactly
    /// the given formulas' atoms.
    fn load(&self, formulas: &[&Formula]) -> Result<WeightDistribution> {
        match self {
            WeightsSource::Uniform => {
                let atoms: Vec<String> = formulas
                    .iter()
                    .flat_map(|f| f.atoms())
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                Ok(uniform_weights(&standard_collection(&atoms)?))
            }
            WeightsSource::File(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
                Ok(WeightDistribution::from_json_str(&text)?)
            }
        }
    }
}

fn parse(text: &str) -> Result<Formula> {
    Ok(text.parse::<Formula>().map_err(Error::from)?)
}

fn exact(r: &Rational) -> String {
    r.to_string()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn line(value: serde_json::Value) -> String {
    format!("{value}\n")
}

pub fn eval(texts: &[String], weights: &WeightsSource, format: Format, float: bool) -> Result<String> {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("formula,measure,decimal\n");
    }
    for text in texts {
        let phi = parse(text)?;
        let d = weights.load(&[&phi])?;
        let m = measure(&phi, &d)?;
        match format {
            Format::Text if float => out.push_str(&format!("{}\n", m.to_f64())),
            Format::Text => out.push_str(&format!("{}\n", m.display_with_decimal())),
            Format::Json => out.push_str(&line(json!({
                "formula": phi.to_string(),
                "measure": exact(m.value()),
                "decimal": format_decimal12(m.value()),
            }))),
            Format::Csv => out.push_str(&format!("{},{},{}\n", phi, m, format_decimal12(m.value()))),
        }
    }
    Ok(out)
}

pub fn oracle(text: &str, weights: &WeightsSource, format: Format, cap: u64, list: bool) -> Result<String> {
    let phi = parse(text)?;
    let d = weights.load(&[&phi])?;
    let config = OracleConfig { cap, list_limit: if list { LIST_LIMIT } else { 0 } };
    let r = measure_oracle_with(&phi, &d, &config)?;
    let m = MeasureValue::new(r.measure.clone()).expect("oracle measure lies in [0, 1]");
    let tuples = |set: &Vec<Vec<usize>>| {
        set.iter()
            .map(|t| format!("({})", t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(match format {
        Format::Text => {
            let mut s = format!(
                "formula: {phi}\nmeasure: {}\nassociated: {}\njustifying: {}\n",
                m.display_with_decimal(),
                r.associated,
                r.justifying
            );
            if list {
                match &r.justifying_set {
                    Some(set) => s.push_str(&format!("justifying set: {}\n", tuples(set))),
                    None => s.push_str(&format!(
                        "justifying set: omitted (more than {LIST_LIMIT} associated sequences)\n"
                    )),
                }
            }
            s
        }
        Format::Json => line(json!({
            "formula": phi.to_string(),
            "measure": exact(&r.measure),
            "decimal": format_decimal12(&r.measure),
            "associated": r.associated,
            "justifying": r.justifying,
            "justifying_set": r.justifying_set,
        })),
        Format::Csv => format!(
            "formula,measure,decimal,associated,justifying\n{phi},{},{},{},{}\n",
            exact(&r.measure),
            format_decimal12(&r.measure),
            r.associated,
            r.justifying
        ),
    })
}

pub fn entail(premise: &str, conclusion: &str, threshold: &str, weights: &WeightsSource, format: Format) -> Result<String> {
    let p = parse(premise)?;
    let q = parse(conclusion)?;
    let k = parse_rational(threshold)?;
    let query = EntailmentQuery::new(p.clone(), q.clone(), k.clone())?;
    let d = weights.load(&[&p, &q])?;
    let r = entails_at(&query, &d)?;
    let verdict = r.verdict();
    Ok(match format {
        Format::Text => format!(
            "premise: {p}\nconclusion: {q}\nthreshold: {}\nmu(P): {}\nmu(P -> Q): {}\nmu(Q): {}\n\
             premises >= k: {}\nconclusion >= k: {}\nverdict: {}\n",
            exact(&k),
            r.premise.display_with_decimal(),
            r.implication.display_with_decimal(),
            r.conclusion.display_with_decimal(),
            yes_no(r.premises_meet_k),
            yes_no(r.conclusion_meets_k),
            verdict.as_str()
        ),
        Format::Json => line(json!({
            "premise": p.to_string(),
            "conclusion": q.to_string(),
            "threshold": exact(&k),
            "mu_p": exact(r.premise.value()),
            "mu_pq": exact(r.implication.value()),
            "mu_q": exact(r.conclusion.value()),
            "premises_meet_k": r.premises_meet_k,
            "conclusion_meets_k": r.conclusion_meets_k,
            "verdict": verdict.as_str(),
        })),
        Format::Csv => format!(
            "premise,conclusion,k,mu_p,mu_pq,mu_q,premises_meet_k,conclusion_meets_k,verdict\n\
             {p},{q},{},{},{},{},{},{},{}\n",
            exact(&k),
            r.premise,
            r.implication,
            r.conclusion,
            u8::from(r.premises_meet_k),
            u8::from(r.conclusion_meets_k),
            verdict.as_str()
        ),
    })
}

/// CSV unless `--format json`. With `out` the data goes to the file and
/// nothing is printed.
pub fn surface(steps: usize, out: Option<&Path>, format: Format) -> Result<String> {
    let samples = surface_grid(steps)?;
    let body = match format {
        Format::Json => format!("{}\n", surface_json(&samples)),
        Format::Text | Format::Csv => {
            let mut buf = Vec::new();
            write_surface_csv(&samples, &mut buf).expect("writing to memory");
            String::from_utf8(buf).expect("ascii csv")
        }
    };
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

/// Returns the report and exit code: 1 if a tautology has measure 0.
pub fn check(text: &str, weights: &WeightsSource, format: Format) -> Result<(String, u8)> {
    let phi = parse(text)?;
    // truth-table cap first, so an oversized formula reports exit 5 before weights
    is_tautology(&phi)?;
    let d = weights.load(&[&phi])?;
    let r = soundness_check(&phi, &d)?;
    let status = match (r.is_taut, r.upholds_soundness()) {
        (false, _) => "not applicable (not a tautology)",
        (true, true) => "ok",
        (true, false) => "VIOLATED",
    };
    let code = if r.upholds_soundness() { 0 } else { 1 };
    let decimal = format_decimal12(&r.measure);
    let out = match format {
        Format::Text => format!(
            "formula: {phi}\ntautology: {}\nmeasure: {} ({decimal})\nsoundness: {status}\n",
            yes_no(r.is_taut),
            exact(&r.measure)
        ),
        Format::Json => line(json!({
            "formula": phi.to_string(),
            "tautology": r.is_taut,
            "measure": exact(&r.measure),
            "decimal": decimal,
            "positive": r.positive,
            "soundness": status,
        })),
        Format::Csv => format!(
            "formula,tautology,measure,decimal,positive\n{phi},{},{},{decimal},{}\n",
            u8::from(r.is_taut),
            exact(&r.measure),
            u8::from(r.positive)
        ),
    };
    Ok((out, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform() -> WeightsSource {
        WeightsSource::Uniform
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&["A & !B".into()], &uniform(), Format::Text, false).unwrap(), "1/4 (0.25)\n");
        assert_eq!(eval(&["A | !B".into()], &uniform(), Format::Text, false).unwrap(), "3/4 (0.75)\n");
        assert_eq!(eval(&["A | !A".into()], &uniform(), Format::Text, false).unwrap(), "3/4 (0.75)\n");
        assert_eq!(eval(&["A & !B".into()], &uniform(), Format::Text, true).unwrap(), "0.25\n");
    }

    #[test]
    fn oracle_examples() {
        let s = oracle("A & !B", &uniform(), Format::Text, 1_000_000, true).unwrap();
        assert!(s.contains("measure: 1/4 (0.25)\nassociated: 16\njustifying: 4\n"), "{s}");
        assert!(s.contains("justifying set: (2,0) (2,2) (3,0) (3,2)"), "{s}");
        let s = oracle("A", &uniform(), Format::Text, 1_000_000, false).unwrap();
        assert_eq!(s, "formula: A\nmeasure: 1/2 (0.5)\nassociated: 2\njustifying: 1\n");
        let e = oracle("A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A & A", &uniform(), Format::Text, 1_000_000, false).unwrap_err();
        assert_eq!(e.exit_code(), 5);
    }

    #[test]
    fn exit_codes() {
        let code = |r: Result<String>| r.unwrap_err().exit_code();
        assert_eq!(code(eval(&["A &".into()], &uniform(), Format::Text, false)), 2);
        assert_eq!(code(entail("A", "B", "2", &uniform(), Format::Text)), 2);
        assert_eq!(code(entail("A", "B", "x", &uniform(), Format::Text)), 2);
        assert_eq!(code(surface(1, None, Format::Csv)), 2);
        let missing = WeightsSource::File("/nonexistent/weights.json".into());
        assert_eq!(code(eval(&["A".into()], &missing, Format::Text, false)), 6);
    }

    #[test]
    fn entail_verdicts() {
        let s = entail("A", "B", "0.25", &uniform(), Format::Text).unwrap();
        assert!(s.contains("mu(P): 1/2 (0.5)\nmu(P -> Q): 3/4 (0.75)\nmu(Q): 1/2 (0.5)\n"), "{s}");
        assert!(s.ends_with("verdict: holds\n"));
        let s = entail("A", "B", "0.75", &uniform(), Format::Text).unwrap();
        assert!(s.contains("premises >= k: no"));
        assert!(s.ends_with("verdict: premises below threshold\n"));
    }

    #[test]
    fn check_reports() {
        let (s, code) = check("A | !A", &uniform(), Format::Text).unwrap();
        assert_eq!(code, 0);
        assert_eq!(s, "formula: A | !A\ntautology: yes\nmeasure: 3/4 (0.75)\nsoundness: ok\n");
        let (s, _) = check("A & !A", &uniform(), Format::Text).unwrap();
        assert!(s.contains("tautology: no\nmeasure: 1/4 (0.25)"));
    }
}
