use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../spinetor/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinetor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn copy_fixtures(dir: &Path) {
    for f in ["abalone.tri", "abalone_k.knot"] {
        fs::copy(fixtures().join(f), dir.join(f)).unwrap();
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_abalone() {
    let o = run(&["validate", path(&fixtures().join("abalone.tri"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("valid\n"));
}

#[test]
fn validate_rejects_corrupted_gluing() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixtures().join("abalone.tri")).unwrap();
    let bad = text.replace("face 0 0 -> 0 2 102", "face 0 0 -> 0 1 102");
    let p = dir.path().join("bad.tri");
    fs::write(&p, bad).unwrap();
    let o = run(&["validate", path(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid"));
}

#[test]
fn dig_writes_exterior_that_validates() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let out = dir.path().join("ext.tri");
    let o = run(&["dig", path(&dir.path().join("abalone_k.knot")), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 vertices, 10 edges, 6 regions"));
    let o = run(&["validate", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["info", path(&out)]);
    assert!(stdout(&o).contains("H_1: Z\n"));
}

#[test]
fn dig_rejects_invalid_diagram() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let p = dir.path().join("bad.knot");
    fs::write(&p, "knot on abalone.tri\ncross E1 @0\narc R0 low/high\n").unwrap();
    let o = run(&["dig", path(&p)]);
    assert_eq!(o.status.code(), Some(1));
    let p = dir.path().join("worse.knot");
    fs::write(&p, "knot on abalone.tri\nwibble\n").unwrap();
    assert_eq!(run(&["dig", path(&p)]).status.code(), Some(1));
}

#[test]
fn torsion_of_the_abalone_knot() {
    let o = run(&["torsion", path(&fixtures().join("abalone_k.knot"))]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("cells: 3 14 16 5\n"));
    assert!(s.contains("torsion: ± t^-1\n"));
    assert!(s.contains("monomial: t^-1\n"));
}

#[test]
fn blackened_torsion() {
    let o = run(&["torsion", path(&fixtures().join("abalone_k.knot")), "--blacken"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torsion: ± t^-2 * (t - 1)\n"));
    let o = run(&["torsion", path(&fixtures().join("abalone_k.knot")), "--blacken", "--rel", "wbar"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn undefined_torsion_exits_zero() {
    let o = run(&["torsion", path(&fixtures().join("abalone.tri"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torsion: undefined"));
    let o = run(&["torsion", path(&fixtures().join("abalone.tri")), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["acyclic"], false);
    assert!(v["torsion"].is_null());
}

#[test]
fn curled_diagram_shifts_torsion() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    for (sign, count, expected) in [("+", "1", "± 1\n"), ("+", "2", "± t\n"), ("-", "1", "± t^-2\n")] {
        let out = dir.path().join(format!("c{sign}{count}.knot"));
        let o = run(&["curl", path(&dir.path().join("abalone_k.knot")), "--sign", sign, "--count", count, "-o", path(&out)]);
        assert_eq!(o.status.code(), Some(0));
        let o = run(&["torsion", path(&out)]);
        assert!(stdout(&o).contains(&format!("torsion: {expected}")), "{}", stdout(&o));
    }
}

#[test]
fn representation_assignments() {
    let knot = fixtures().join("abalone_k.knot");
    let o = run(&["torsion", path(&knot), "--rep", "t=2"]);
    assert!(stdout(&o).contains("torsion: ± 1 / 2\n"));
    let o = run(&["torsion", path(&knot), "--rep", "t=1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["torsion", path(&knot), "--rep", "s=2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let knot = fixtures().join("abalone_k.knot");
    assert_eq!(run(&["torsion", path(&knot), "--subdivision", "economical"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", path(&knot), "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["info", "/nonexistent/file.tri"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let knot = fixtures().join("abalone_k.knot");
    for args in [vec!["torsion", path(&knot), "--json"], vec!["info", path(&knot)], vec!["dig", path(&knot)]] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["torsion", path(&knot), "--tree-seed", "5"]);
    let b = run(&["torsion", path(&knot)]);
    assert_eq!(a.stdout, b.stdout);
}
