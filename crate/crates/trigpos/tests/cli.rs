use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trigpos::prover::{fixture, read_bundle, BUNDLE_FILES};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_trigpos"));
    c.current_dir(workspace());
    c
}

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn prove_to(goal: &str, dir: &Path) -> Output {
    run(&["prove", goal, "--out", dir.to_str().unwrap()])
}

#[test]
fn prove_writes_a_checkable_bundle() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("b");
    let o = prove_to("corpus/thm2.1-left.goal", &dir);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("VALID: 10 of 10"));
    for f in BUNDLE_FILES {
        assert!(dir.join(f).is_file(), "missing {f}");
    }
    let cert = read_bundle(&dir).unwrap();
    assert_eq!(*cert.left.reduced(), fixture("thm2.1-left.left").unwrap());
    let o = run(&["check", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bundles_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert_eq!(prove_to("corpus/thm2.2-left.goal", &a).status.code(), Some(0));
    assert_eq!(prove_to("corpus/thm2.2-left.goal", &b).status.code(), Some(0));
    for f in BUNDLE_FILES {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
}

#[test]
fn degree_cap_starves_the_proof() {
    let o = run(&["prove", "corpus/thm2.1-left.goal", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("not valid") || text.contains("cannot"), "{text}");
}

#[test]
fn refuted_goal_reports_a_counterexample() {
    let o = run(&["prove", "corpus/thm1.1-right.goal"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: f(x) < 0 at x = "), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["prove", "corpus/no-such.goal"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["prove", "corpus/thm2.1-left.goal", "--split", "x/"]).status.code(), Some(2));
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["check", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a certificate bundle"));
    let bad = tmp.path().join("bad.goal");
    fs::write(&bad, "name: t\nexpr: sin(x\nlo: 0\nhi: 1\n").unwrap();
    let o = run(&["prove", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn edited_coefficient_fails_the_check() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("b");
    assert_eq!(prove_to("corpus/thm2.1-left.goal", &dir).status.code(), Some(0));
    let path = dir.join("left.reduction.txt");
    let text = fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let result = v["result"].as_str().unwrap().to_string();
    let (head, tail) = result.split_once(';').unwrap();
    let (first, rest) = tail.trim_start().split_once(';').unwrap();
    // Fixture records accept expressions, so `c + 1` perturbs one coefficient.
    let edited = format!("{head}; {first} + 1; {}", rest.trim_start());
    v["result"] = serde_json::Value::String(edited);
    fs::write(&path, serde_json::to_string_pretty(&v).unwrap() + "\n").unwrap();
    let o = run(&["check", dir.to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    assert!(text.contains("FAIL left.reduction"), "{text}");
}

#[test]
fn roots_command() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().join("cubic.poly");
    fs::write(&p, "# cubic\n8*x^3 - 168*x^2 + 945\n").unwrap();
    let o = run(&["roots", p.to_str().unwrap(), "--width", "1e-7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for prefix in ["-2.253", "2.528", "20.724"] {
        assert!(text.contains(prefix), "{text}");
    }
    let o = run(&["roots", p.to_str().unwrap(), "--first-positive", "--width", "1e-7"]);
    let text = stdout(&o);
    assert!(text.contains("2.528") && !text.contains("20.724"), "{text}");
    let o = run(&["roots", "corpus/fixtures/printed-q12.poly", "--first-positive", "--width", "1e-7"]);
    assert!(stdout(&o).contains("1.43649"), "{}", stdout(&o));
}

#[test]
fn corpus_table_lists_the_hinted_splits() {
    let o = run(&["corpus", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for split in ["1.57", "1.53", "0.98", "1.43"] {
        assert!(text.contains(split), "{text}");
    }
}

#[test]
fn corpus_single_entry_run() {
    let o = run(&["corpus", "--run", "--only", "thm2.2-right"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS thm2.2-right"), "{text}");
    assert!(text.contains("1/1 entries certified"), "{text}");
    assert_eq!(run(&["corpus", "--run", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn structured_output_is_json() {
    let o = run(&["prove", "corpus/thm2.2-left.goal", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}
