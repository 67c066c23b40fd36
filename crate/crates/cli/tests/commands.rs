use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const H3: &str = r#"{
  "name": "H3",
  "n": 2,
  "dim": 3,
  "parity": [0, 0, 0],
  "alpha": [["1","0","0"],["0","1","0"],["0","0","1"]],
  "bracket": [{"args": [1, 2], "value": {"3": "1"}}]
}"#;

const ABELIAN2: &str = r#"{
  "name": "abelian(2)",
  "n": 2,
  "dim": 2,
  "parity": [0, 0],
  "alpha": [["1","0"],["0","1"]],
  "bracket": []
}"#;

fn nambu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nambu")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_h3_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    let o = nambu(&["verify", s(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let j = nambu(&["verify", s(&f), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_h3_with_identity_form_reports_invariance_witness() {
    let dir = tempfile::tempdir().unwrap();
    let text = H3.replace("\"bracket\"", "\"form\": [[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"1\"]],\n  \"bracket\"");
    let f = write(dir.path(), "h3id.json", &text);
    let o = nambu(&["verify", s(&f), "--metric"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL invariant"), "{}", stdout(&o));
}

#[test]
fn metric_flag_without_form_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    assert_eq!(nambu(&["verify", s(&f), "--metric"]).status.code(), Some(2));
}

#[test]
fn malformed_rational_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", &H3.replace("\"3\": \"1\"", "\"3\": \"1/0\""));
    let o = nambu(&["verify", s(&f)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn cohomology_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write(dir.path(), "ab.json", ABELIAN2);
    let o = nambu(&["cohomology", s(&ab), "--m", "1", "--rep", "adjoint", "--parity", "even"]);
    assert!(stdout(&o).contains("C=8 Z=8 B=0 H=8"), "{}", stdout(&o));
    let o = nambu(&["cohomology", s(&ab), "--m", "0"]);
    assert!(stdout(&o).contains("B=0 (no δ^{-1})"), "{}", stdout(&o));
    // Pinned against an independent Leibniz-complex computation.
    let h3 = write(dir.path(), "h3.json", H3);
    let o = nambu(&["cohomology", s(&h3), "--m", "1"]);
    assert!(stdout(&o).contains("C=27 Z=11 B=3 H=8"), "{}", stdout(&o));
    let o = nambu(&["cohomology", s(&h3), "--m", "0"]);
    assert!(stdout(&o).contains("C=9 Z=6 B=0 (no δ^{-1}) H=6"), "{}", stdout(&o));
}

#[test]
fn cohomology_dump_writes_cocycles() {
    let dir = tempfile::tempdir().unwrap();
    let h3 = write(dir.path(), "h3.json", H3);
    let out = dir.path().join("z.json");
    let o = nambu(&["cohomology", s(&h3), "--m", "1", "--parity", "both", "--dump", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["parity 0"].as_array().unwrap().len(), 11);
    assert_eq!(v["parity 1"].as_array().unwrap().len(), 0);
}

#[test]
fn missing_coadjoint_exits_with_precondition_code() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = r#"[["2","0","0"],["0","3","0"],["0","0","6"]]"#;
    let text = H3.replace(r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#, alpha);
    let f = write(dir.path(), "h3tw.json", &text);
    assert_eq!(nambu(&["verify", s(&f)]).status.code(), Some(0));
    let o = nambu(&["cohomology", s(&f), "--rep", "coadjoint"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("coadjoint"), "{}", stderr(&o));
}

#[test]
fn series_of_h3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    assert_eq!(stdout(&nambu(&["series", s(&f)])).trim(), "nilpotent k=2, solvable k=2");
}

#[test]
fn tstar_then_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    let t = dir.path().join("t.json");
    let o = nambu(&["tstar", s(&f), "--theta", "zero", "--out", s(&t)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stderr(&o).contains("FAIL"));
    assert_eq!(nambu(&["verify", s(&t), "--metric"]).status.code(), Some(0));
    let o = nambu(&["series", s(&t)]);
    assert!(stdout(&o).starts_with("nilpotent k=2"));
    let o = nambu(&["decompose", s(&t)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c["checks"]["φ isometry"], "PASS");
    assert_eq!(c["g1"]["dim"], 3);
    // identical inputs give identical bytes
    assert_eq!(stdout(&o), stdout(&nambu(&["decompose", s(&t)])));
}

#[test]
fn decompose_odd_line_needs_field_extension() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
  "name": "line",
  "n": 2,
  "dim": 1,
  "parity": [0],
  "alpha": [["1"]],
  "form": [["1"]],
  "bracket": []
}"#;
    let f = write(dir.path(), "line.json", text);
    let o = nambu(&["decompose", s(&f)]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn twist_and_equiv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    let endo = write(dir.path(), "rho.json", r#"[["2","0","0"],["0","3","0"],["0","0","6"]]"#);
    let o = nambu(&["twist", s(&f), "--endo", s(&endo)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"6\""));
    let bad = write(dir.path(), "bad.json", r#"[["2","0","0"],["0","1","0"],["0","0","1"]]"#);
    assert_ne!(nambu(&["twist", s(&f), "--endo", s(&bad)]).status.code(), Some(0));

    let ab3 = ABELIAN2.replace("\"dim\": 2", "\"dim\": 3").replace("[0, 0]", "[0, 0, 0]").replace(
        r#"[["1","0"],["0","1"]]"#,
        r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#,
    );
    let ab = ab3.replace("\"bracket\"", "\"theta\": [{\"args\": [1, 2], \"value\": {\"3\": \"1\"}}, {\"args\": [1, 3], \"value\": {\"2\": \"-1\"}}, {\"args\": [2, 3], \"value\": {\"1\": \"1\"}}],\n  \"bracket\"");
    let zero = ab3.replace("\"bracket\"", "\"theta\": [],\n  \"bracket\"");
    let g = write(dir.path(), "ab.json", &ab3);
    let t1 = write(dir.path(), "t1.json", &ab);
    let t0 = write(dir.path(), "t0.json", &zero);
    let o = nambu(&["equiv", s(&g), s(&t1), s(&t1)]);
    assert!(stdout(&o).starts_with("isometrically equivalent"), "{}{}", stdout(&o), stderr(&o));
    // abelian: no coboundaries, so distinct cocycles are inequivalent
    let o = nambu(&["equiv", s(&g), s(&t0), s(&t1)]);
    assert_eq!(stdout(&o).trim(), "inequivalent", "{}", stderr(&o));
}

#[test]
fn extend_by_trivial_module() {
    let dir = tempfile::tempdir().unwrap();
    let text = ABELIAN2.replace(
        "\"bracket\"",
        "\"representation\": {\"name\": \"trivial\", \"parity\": [0], \"nu\": [[\"1\"]], \"rho\": []},\n  \"cocycle\": [{\"args\": [1, 2], \"value\": {\"1\": \"1\"}}],\n  \"bracket\"",
    );
    let f = write(dir.path(), "datum.json", &text);
    let out = dir.path().join("ext.json");
    let o = nambu(&["extend", s(&f), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(nambu(&["verify", s(&out)]).status.code(), Some(0));
    assert_eq!(stdout(&nambu(&["series", s(&out)])).trim(), "nilpotent k=2, solvable k=2");
}

#[test]
fn fuzz_is_deterministic() {
    let a = nambu(&["fuzz", "--seed", "5", "--count", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&nambu(&["fuzz", "--seed", "5", "--count", "4"])));
}

#[test]
fn thread_cap_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h3.json", H3);
    let o = Command::new(env!("CARGO_BIN_EXE_nambu")).env("NAMBU_THREADS", "1").args(["verify", s(&f)]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}
