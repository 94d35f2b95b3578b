//! Shared between the golden and acceptance targets.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "eval_text", args: &["eval", "A & !B", "A | !B", "A & !A", "A | !A"], code: 0 },
    Case { name: "eval_float", args: &["eval", "--float", "A -> B", "!(A & B & C)"], code: 0 },
    Case { name: "eval_json", args: &["--format", "json", "eval", "A & !B", "A ∨ ¬B"], code: 0 },
    Case { name: "eval_csv", args: &["--format", "csv", "eval", "A", "A & B", "A -> B -> C"], code: 0 },
    Case {
        name: "eval_skewed",
        args: &["--weights", "@skewed.json", "eval", "A", "B", "A & B", "A -> B"],
        code: 0,
    },
    Case { name: "oracle_text", args: &["oracle", "A & !B", "--list"], code: 0 },
    Case { name: "oracle_or", args: &["oracle", "A | !B", "--list"], code: 0 },
    Case { name: "oracle_json", args: &["--format", "json", "oracle", "A -> B", "--list"], code: 0 },
    Case { name: "oracle_csv", args: &["--format", "csv", "oracle", "(A | B) & !C"], code: 0 },
    Case { name: "oracle_omitted", args: &["oracle", "A & B & C", "--list"], code: 0 },
    Case {
        name: "oracle_partial",
        args: &["--weights", "@partial.json", "oracle", "A -> B", "--list"],
        code: 0,
    },
    Case { name: "entail_holds", args: &["entail", "-P", "A", "-Q", "B", "-k", "0.5"], code: 0 },
    Case { name: "entail_below", args: &["entail", "-P", "A", "-Q", "B", "-k", "3/4"], code: 0 },
    Case {
        name: "entail_fails",
        args: &["--weights", "@skewed.json", "entail", "-P", "A", "-Q", "A & B", "-k", "0.6"],
        code: 0,
    },
    Case { name: "entail_json", args: &["--format", "json", "entail", "-P", "A | B", "-Q", "B", "-k", "1/2"], code: 0 },
    Case { name: "entail_csv", args: &["--format", "csv", "entail", "-P", "A", "-Q", "A", "-k", "1"], code: 0 },
    Case { name: "surface_csv", args: &["surface", "--steps", "5"], code: 0 },
    Case { name: "surface_json", args: &["--format", "json", "surface", "--steps", "3"], code: 0 },
    Case { name: "check_taut", args: &["check", "((A -> B) & A) -> B"], code: 0 },
    Case { name: "check_contradiction", args: &["check", "A & !A"], code: 0 },
    Case { name: "check_json", args: &["--format", "json", "check", "A | !A"], code: 0 },
    Case { name: "check_csv", args: &["--format", "csv", "check", "A"], code: 0 },
    Case { name: "err_parse", args: &["eval", "A &"], code: 2 },
    Case { name: "err_token", args: &["eval", "A $ B"], code: 2 },
    Case { name: "err_threshold", args: &["entail", "-P", "A", "-Q", "B", "-k", "0"], code: 2 },
    Case { name: "err_steps", args: &["surface", "--steps", "1"], code: 2 },
    Case { name: "err_weights_sum", args: &["--weights", "@bad_sum.json", "eval", "A"], code: 3 },
    Case { name: "err_unknown_atom", args: &["--weights", "@skewed.json", "eval", "C"], code: 4 },
    Case { name: "err_cap", args: &["--cap", "100", "oracle", "A & B & C & A"], code: 5 },
    Case { name: "err_io", args: &["--weights", "@missing.json", "eval", "A"], code: 6 },
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// `@name` arguments refer to files under `tests/fixtures/`.
pub fn run(args: &[&str]) -> (String, String, i32) {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => fixtures().join(file).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_pml")).args(&args).output().expect("spawn pml");
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
        out.status.code().expect("exit code"),
    )
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}
