use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use thue_pcp::format::{emit_instance, parse_instance};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thue-pcp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn fixtures() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "inst"))
        .collect();
    files.sort();
    files
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fixtures_are_canonical() {
    let files = fixtures();
    assert!(files.len() >= 20, "only {} fixtures", files.len());
    for path in files {
        let text = fs::read_to_string(&path).unwrap();
        let parsed = parse_instance(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(emit_instance(&parsed), text, "{}", path.display());
    }
}

#[test]
fn solved_witnesses_pass_check() {
    let dir = TempDir::new().unwrap();
    let mut solved = 0;
    for path in fixtures() {
        let path = path.to_str().unwrap();
        let out = run(&["solve", path]);
        if out.status.code() != Some(0) {
            continue;
        }
        let witness = write(&dir, "w", &stdout(&out));
        let check = run(&["check", path, &witness]);
        assert_eq!(check.status.code(), Some(0), "{path}: {}", stderr(&check));
        solved += 1;
    }
    assert!(solved >= 10);
}

#[test]
fn pipeline_pcp_is_solved() {
    let out = run(&["solve", fixture("k1_pipeline_pcp.inst").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "witness @b @a1 @e\n");
}

#[test]
fn unreachable_target_exits_two() {
    let out = run(&["solve", fixture("cex1_access.inst").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn exhausted_bound_exits_one() {
    let out = run(&["solve", fixture("cex2_access.inst").to_str().unwrap(), "--max-len", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["solve", fixture("cex2_access.inst").to_str().unwrap(), "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_witness_is_diagnosed() {
    let dir = TempDir::new().unwrap();
    let inst = fixture("k1_access.inst");
    let good = write(&dir, "good", "step 0 0\n");
    let bad = write(&dir, "bad", "step 3 0\n");
    assert_eq!(run(&["check", inst.to_str().unwrap(), &good]).status.code(), Some(0));
    let out = run(&["check", inst.to_str().unwrap(), &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("step 0"), "{}", stderr(&out));

    let pcp = fixture("k1_pipeline_pcp.inst");
    let wrong = write(&dir, "wrong", "witness @b @e\n");
    assert_eq!(run(&["check", pcp.to_str().unwrap(), &wrong]).status.code(), Some(2));
}

#[test]
fn format_and_usage_errors() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.inst", "kind access\nletters a\nletters b\n");
    let out = run(&["solve", &broken]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    assert_eq!(run(&["solve"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    let inst = fixture("k1_access.inst");
    assert_eq!(run(&["reduce", inst.to_str().unwrap(), "--to", "sat"]).status.code(), Some(3));
    let pcp = fixture("classic_pcp.inst");
    assert_eq!(run(&["reduce", pcp.to_str().unwrap(), "--to", "gpcp"]).status.code(), Some(3));
    assert_eq!(run(&["solve", "/nonexistent/file.inst"]).status.code(), Some(4));
}

#[test]
fn duplicate_rules_warn() {
    let out = run(&["solve", fixture("duplicate_rules_access.inst").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn reduce_and_translate_both_ways() {
    let dir = TempDir::new().unwrap();
    let manifest = dir.path().join("m").to_str().unwrap().to_string();
    let out = run(&["reduce", fixture("swap_access.inst").to_str().unwrap(), "--to", "pcp", "--manifest", &manifest]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let pcp = write(&dir, "pcp.inst", &stdout(&out));

    let solved = run(&["solve", fixture("swap_access.inst").to_str().unwrap()]);
    assert_eq!(solved.status.code(), Some(0));
    let trace = write(&dir, "trace", &stdout(&solved));
    let forward = run(&["translate", &trace, "--manifest", &manifest, "--direction", "forward"]);
    assert_eq!(forward.status.code(), Some(0), "{}", stderr(&forward));
    let word = write(&dir, "word", &stdout(&forward));
    assert_eq!(run(&["check", &pcp, &word]).status.code(), Some(0));

    let backward = run(&["translate", &word, "--manifest", &manifest, "--direction", "backward"]);
    assert_eq!(backward.status.code(), Some(0), "{}", stderr(&backward));
    let back = write(&dir, "back", &stdout(&backward));
    assert_eq!(run(&["check", fixture("swap_access.inst").to_str().unwrap(), &back]).status.code(), Some(0));

    // a witness for the wrong end of the chain
    let wrong = run(&["translate", &trace, "--manifest", &manifest, "--direction", "backward"]);
    assert_ne!(wrong.status.code(), Some(0));
}

#[test]
fn gpcp_to_pcp_strips_first() {
    let dir = TempDir::new().unwrap();
    let manifest = dir.path().join("m").to_str().unwrap().to_string();
    let out = run(&["reduce", fixture("eps_eps_gpcp.inst").to_str().unwrap(), "--to", "pcp", "--manifest", &manifest]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("kind pcp\nletters b @b @e\n"), "{}", stdout(&out));
    assert!(fs::read_to_string(&manifest).unwrap().contains("stage strip-eps-eps"));
}

#[test]
fn normalize_stages() {
    let ins = fixture("insertion_access.inst");
    let out = run(&["normalize", ins.to_str().unwrap(), "--stage", "eps-free"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "kind access\nletters a @d\nrule @d -> @d a @d\nsource @d\ntarget @d a @d\n"
    );
    let out = run(&["normalize", ins.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("kind access\nletters 0 1\n"));

    let eps = fixture("eps_eps_gpcp.inst");
    let out = run(&["normalize", eps.to_str().unwrap(), "--stage", "strip"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("letters b\n"));
    assert_eq!(run(&["normalize", eps.to_str().unwrap(), "--stage", "ck"]).status.code(), Some(3));
}
