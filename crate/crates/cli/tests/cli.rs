use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lscat_core::chain::{ChainMap, Complex};
use lscat_core::instance::ChainCertificate;

fn lscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn doc<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> PathBuf {
    write(dir, name, &serde_json::to_string(value).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cat_of_sphere_and_zero() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = doc(dir.path(), "s2.json", &Complex::sphere(2));
    let o = lscat(&["cat", s(&s2)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cat = 1\n"));
    let z = doc(dir.path(), "z.json", &Complex::zero());
    assert!(stdout(&lscat(&["cat", s(&z)])).starts_with("cat = 0\n"));
    let o = lscat(&["cat", s(&s2), "--max-n", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two_with_degree() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"dims":{"0":1,"1":1,"2":1},"d":{"1":[["1"]],"2":[["1"]]}}"#);
    let o = lscat(&["cat", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d(1) * d(2) != 0"));
    let junk = write(dir.path(), "junk.json", "not json");
    assert_eq!(lscat(&["indcat", s(&junk)]).status.code(), Some(2));
    assert_eq!(lscat(&["cat", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn support_guard_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = doc(dir.path(), "s2.json", &Complex::sphere(2));
    assert_eq!(lscat(&["ganea", s(&s2), "-n", "1", "--support-guard", "2"]).status.code(), Some(0));
    let o = lscat(&["ganea", s(&s2), "-n", "2", "--support-guard", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree 3"));
    assert_eq!(lscat(&["cat", s(&s2), "--support-guard", "1"]).status.code(), Some(3));
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = doc(dir.path(), "s2.json", &Complex::sphere(2));
    let cert = dir.path().join("cert.json");
    let o = lscat(&["indcat", s(&s2), "--emit-cert", s(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("indcat = 1\n"));
    assert_eq!(lscat(&["verify-cert", s(&cert), s(&s2)]).status.code(), Some(0));

    let s3 = doc(dir.path(), "s3.json", &Complex::sphere(3));
    assert_eq!(lscat(&["verify-cert", s(&cert), s(&s3)]).status.code(), Some(1));

    // One matrix entry of α changed.
    let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let alpha = &mut value["step"]["domination"]["alpha"]["comps"]["2"][0][0];
    let old = alpha.as_str().unwrap().to_string();
    *alpha = serde_json::Value::String(if old == "0" { "1".into() } else { "0".into() });
    let tampered = write(dir.path(), "tampered.json", &value.to_string());
    let o = lscat(&["verify-cert", s(&tampered), s(&s2)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("p ∘ τ = α"), "{}", stdout(&o));

    // One matrix entry of the section changed breaks the chain map itself.
    let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    value["step"]["domination"]["s"]["comps"]["2"][0][0] = serde_json::Value::String("7".into());
    let tampered = write(dir.path(), "tampered2.json", &value.to_string());
    let o = lscat(&["verify-cert", s(&tampered), s(&s2)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rejected"));
}

#[test]
fn weq_dualize_ganea_join_dominates() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = doc(dir.path(), "s2.json", &Complex::sphere(2));
    let thick = doc(dir.path(), "t.json", &lscat_core::chain::direct_sum(&Complex::sphere(2), &Complex::disc(0)));
    let o = lscat(&["weq", s(&s2), s(&thick)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weakly equivalent: yes"));
    let s0 = doc(dir.path(), "s0.json", &Complex::sphere(0));
    assert_eq!(lscat(&["weq", s(&s2), s(&s0)]).status.code(), Some(1));

    let dual: Complex = serde_json::from_str(&stdout(&lscat(&["dualize", s(&s2)]))).unwrap();
    assert_eq!(dual, Complex::sphere(-2));
    let f = doc(dir.path(), "f.json", &ChainMap::zero(Complex::sphere(1), Complex::sphere(2)));
    let df: ChainMap = serde_json::from_str(&stdout(&lscat(&["dualize", s(&f)]))).unwrap();
    assert_eq!(df, ChainMap::zero(Complex::sphere(-2), Complex::sphere(-1)));

    let o = lscat(&["ganea", s(&s0), "-n", "2"]);
    assert!(stdout(&o).contains("section found at level 1"), "{}", stdout(&o));

    let g = doc(dir.path(), "g.json", &ChainMap::zero(Complex::zero(), Complex::sphere(0)));
    let o = lscat(&["join", s(&g), s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("join: chain"));
    assert_eq!(lscat(&["join", s(&g), s(&f)]).status.code(), Some(2));

    assert_eq!(lscat(&["dominates", s(&thick), s(&s2)]).status.code(), Some(0));
    assert_eq!(lscat(&["dominates", s(&s2), s(&s0)]).status.code(), Some(1));
    assert!(stdout(&lscat(&["cocat", s(&s2)])).starts_with("cocat = 1"));
    assert!(stdout(&lscat(&["indcocat", s(&s2)])).starts_with("indcocat = 1"));
}

#[test]
fn axiom_audit_and_corrupted_fixture() {
    let o = lscat(&["check-axioms", "--samples", "24", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = lscat(&["check-axioms", "--samples", "40", "--corrupt-fibrations"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("J2: FAIL"));
    assert!(stdout(&o).contains("replay seed"));
}

#[test]
fn emitted_certificate_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let x = lscat_core::chain::direct_sum(&Complex::sphere(0), &Complex::disc(2));
    let xp = doc(dir.path(), "x.json", &x);
    let cert = dir.path().join("cert.json");
    lscat(&["indcat", s(&xp), "--emit-cert", s(&cert)]);
    let text = std::fs::read_to_string(&cert).unwrap();
    let parsed: ChainCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    assert_eq!(parsed.value(), 1);
}
