use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cubal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubal")).args(args).output().expect("spawn cubal")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

/// `ℐ(2^2)` generated into a fresh directory.
fn interval2() -> (TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = cubal(&["gen", "interval", "--n", "2"]);
    assert!(out.status.success());
    let p = write(dir.path(), "i2.json", &stdout(&out));
    (dir, p.to_str().unwrap().to_string())
}

#[test]
fn generated_algebras_check_clean() {
    let (_d, i2) = interval2();
    let out = cubal(&["check", &i2]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("9 elements"));
    assert!(text.contains("MR axiom: holds"));

    let s = cubal(&["--format", "json", "gen", "signed", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(v["type"], "cubic");
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);
}

#[test]
fn gcovers_and_lsb_of_interval2() {
    let (_d, i2) = interval2();
    assert!(stdout(&cubal(&["gcovers", &i2, "--all"])).starts_with("4 g-cover(s)"));
    assert!(stdout(&cubal(&["lsb", &i2])).starts_with("9 elements, 4 atoms"));
    let first = stdout(&cubal(&["gcovers", &i2, "--first"]));
    assert_eq!(first.lines().filter(|l| l.trim_start().starts_with('{')).count(), 1);
}

#[test]
fn special_membership() {
    let (_d, i2) = interval2();
    let yes = cubal(&["special", &i2, "--members", "[{},{p}],[{},{p,q}]"]);
    assert!(yes.status.success(), "{}", String::from_utf8_lossy(&yes.stderr));
    assert!(stdout(&yes).contains("special"));
    let bad = cubal(&["special", &i2, "--members", "[{r},{r}]"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_passes_after_recognition() {
    let (_d, i2) = interval2();
    let out = cubal(&["verify", &i2, "--laws", "lem:simeq,def:cubic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("summary: 2 pass, 0 fail, 0 skipped"), "{text}");
}

#[test]
fn mutants_fail_with_witness() {
    let (_d, i2) = interval2();
    let out = cubal(&["--seed", "5", "verify", &i2, "--laws", "def:cubic", "--mutants", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("FAIL")).count(), 2, "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let (_d, i2) = interval2();
    assert_eq!(cubal(&["verify", &i2, "--laws", "lem:noSuchLaw"]).status.code(), Some(2));
    assert_eq!(cubal(&["--format", "dot", "check", &i2]).status.code(), Some(2));
    assert_eq!(cubal(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(cubal(&["--max-size", "4", "check", &i2]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.json", "{\"type\": \"cubic\"}");
    assert_eq!(cubal(&["check", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn empty_verify_is_clean() {
    let out = cubal(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("summary: 0 pass, 0 fail, 0 skipped"));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let (_d, i2) = interval2();
    let args = ["--seed", "9", "--format", "json", "verify", &i2, "--standard", "--mutants", "1"];
    let a = cubal(&args);
    let b = cubal(&args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exports_round_trip() {
    let (dir, i2) = interval2();
    let dot = stdout(&cubal(&["--format", "dot", "export", &i2]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("rankdir=BT"));

    let coll = cubal(&["--format", "json", "export", &i2, "--what", "collapse"]);
    let cpath = write(dir.path(), "coll.json", &stdout(&coll));
    let v: serde_json::Value = serde_json::from_slice(&coll.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    let misuse = cubal(&["check", cpath.to_str().unwrap()]);
    assert_eq!(misuse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&misuse.stderr).contains("not an algebra"));

    let lsb = cubal(&["--format", "json", "export", &i2, "--what", "lsb"]);
    let v: serde_json::Value = serde_json::from_slice(&lsb.stdout).unwrap();
    assert_eq!(v["type"], "lsb");
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);

    let again = cubal(&["--format", "json", "export", &i2]);
    assert_eq!(stdout(&again).trim(), std::fs::read_to_string(&i2).unwrap().trim());
}

#[test]
fn pair_algebra_from_imp_document() {
    let dir = tempfile::tempdir().unwrap();
    let imp = write(
        dir.path(),
        "imp.json",
        r#"{"type":"imp","ambient":{"type":"bool","atoms":["p","q"]},"carrier":[["p"],["q"],["p","q"]]}"#,
    );
    let out = cubal(&["gen", "pair", "--impalg", imp.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = write(dir.path(), "pair.json", &stdout(&out));
    let check = stdout(&cubal(&["check", p.to_str().unwrap()]));
    assert!(check.contains("cubic algebra: yes"));
    assert!(check.contains("MR axiom: fails"), "{check}");
}

#[test]
fn laws_lists_registry() {
    let text = stdout(&cubal(&["laws"]));
    assert!(text.lines().any(|l| l.starts_with("lem:simeq")));
    assert!(text.lines().count() >= 91);
}
