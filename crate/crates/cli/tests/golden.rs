//! Golden output for every subcommand. Set `PML_BLESS=1` to rewrite the
//! files under `tests/golden/` after an intended format change.

mod common;

use common::{golden_dir, run, CASES};

#[test]
fn golden_outputs() {
    let dir = golden_dir();
    let bless = std::env::var_os("PML_BLESS").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let (stdout, stderr, code) = run(case.args);
        if code != case.code {
            failures.push(format!("{}: exit {code}, expected {} (stderr: {stderr})", case.name, case.code));
            continue;
        }
        // errors go to stderr with a fixed prefix; paths in messages vary per machine
        if case.code != 0 {
            assert!(stdout.is_empty(), "{}: stdout not empty", case.name);
            assert!(stderr.starts_with("pml: "), "{}: {stderr}", case.name);
            continue;
        }
        let path = dir.join(format!("{}.out", case.name));
        if bless {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if stdout != expected {
            failures.push(format!("{}: output differs\n--- expected\n{expected}--- actual\n{stdout}", case.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for case in CASES {
        assert_eq!(run(case.args), run(case.args), "{}", case.name);
    }
}

#[test]
fn surface_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let (stdout, _, code) = run(&["surface", "--steps", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let (direct, _, _) = run(&["surface", "--steps", "4"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);

    let (_, _, code) = run(&["surface", "--out", dir.path().join("no/such/dir.csv").to_str().unwrap()]);
    assert_eq!(code, 6);
}

#[test]
fn check_with_zero_weights() {
    // a weight of zero on every satisfying member: measure 0, still exit 0
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    std::fs::write(&path, r#"{"atoms":["A"],"weights":{"0":"1","1":"0"}}"#).unwrap();
    let (stdout, _, code) = run(&["--weights", path.to_str().unwrap(), "check", "A"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("measure: 0 (0)"), "{stdout}");
    let (stdout, _, code) = run(&["--weights", path.to_str().unwrap(), "check", "A | !A"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("soundness: ok"), "{stdout}");
}
