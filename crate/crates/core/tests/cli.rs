use std::io::Write;
use std::process::{Command, Stdio};

use welded_milnor::cli::run_to_strings;
use welded_milnor::gauss::GaussData;
use welded_milnor::milnor4::MilnorTable;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run_to_strings(args, "");
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn code(args: &[&str]) -> i32 {
    run_to_strings(args, "").0
}

#[test]
fn mu4_tables() {
    let ab = ok(&["mu4", "-m", "3", "a[1,2] a[2,1]"]);
    for line in ["12\t1\t0", "21\t1\t0", "122\t0\t0", "121\t-1\t0"] {
        assert!(ab.lines().any(|l| l == line), "{line} missing in\n{ab}");
    }
    let ba = ok(&["mu4", "-m", "3", "a[2,1] a[1,2]"]);
    assert!(ba.lines().any(|l| l == "122\t1\t0"));

    let empty = ok(&["mu4", "-m", "2", ""]);
    assert!(!empty.is_empty());
    assert!(empty.lines().all(|l| l.ends_with("\t0\t0")));
    let empty3 = ok(&["mu4", "-m", "2", "-n", "3", ""]);
    assert_eq!(empty3.lines().count(), 9);
}

#[test]
fn mu4_with_indeterminacy() {
    let hopf = data("hopf.tsv");
    let out = ok(&["mu4", "-m", "3", "--indeterminacy", &hopf, "a[2,1] a[1,2]"]);
    let mut reduced = 0;
    for line in out.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        if f[2] == "1" {
            assert_eq!(f[1], "0");
            reduced += 1;
        }
    }
    assert!(reduced > 0);
    // length-2 entries stay exact linking numbers
    assert!(out.lines().any(|l| l == "12\t1\t1" || l == "12\t0\t1"));
}

#[test]
fn json_table_output() {
    let out = ok(&["mu4", "-m", "3", "--format", "json", "a[1,2] a[2,1]"]);
    let t = MilnorTable::parse(&out).unwrap();
    let tsv = ok(&["mu4", "-m", "3", "a[1,2] a[2,1]"]);
    assert_eq!(t, MilnorTable::parse(&tsv).unwrap());
}

#[test]
fn compare_modes() {
    let (a, b) = ("a[1,2] a[2,1]", "a[2,1] a[1,2]");
    assert_eq!(ok(&["compare", "--lh", a, b]), "EQUAL\n");
    assert_eq!(ok(&["compare", a, b]), "EQUAL\n");
    assert_eq!(ok(&["compare", "-k", "3", a, b]), "DISTINCT\t122\t0\t1\n");
    assert_eq!(ok(&["compare", "-k", "2", a, b]), "EQUAL\n");
    for args in [vec!["--lh"], vec!["-k", "2"], vec!["-k", "4"]] {
        let mut v = vec!["compare"];
        v.extend(args);
        v.extend([a, a]);
        assert_eq!(ok(&v), "EQUAL\n");
    }
    let three = ok(&["compare", "a[1,2] a[2,3]", "a[2,3] a[1,2]"]);
    assert!(three.starts_with("DISTINCT\t123\t"), "{three}");
}

#[test]
fn phi_realize_round_trip() {
    assert_eq!(ok(&["phi", "-k", "3", "a[1,2]"]), "1: 1\n2: x1\n");
    let fig = "1: x3 / 2: 1 / 3: X2 X3";
    let json = ok(&["realize", fig]);
    let d: GaussData = serde_json::from_str(&json).unwrap();
    assert_eq!(d.event_count(), 3);
    for grade in [vec!["-k", "2"], vec!["-k", "4"], vec!["--reduced"]] {
        let mut v = vec!["phi"];
        v.extend(grade);
        v.push(json.trim());
        assert_eq!(ok(&v), "1: x3\n2: 1\n3: X2 X3\n");
    }
    let trivial = ok(&["realize", "1: 1\n2: 1"]);
    assert_eq!(trivial, "{\"n\":2,\"strands\":[[],[]]}\n");
}

#[test]
fn mirror_stack_phi_is_identity() {
    let d = "a[1,2] A[2,3] a[3,1]";
    let m = ok(&["mirror", d]);
    let s = ok(&["stack", d, m.trim()]);
    let phi = ok(&["phi", "-k", "4", s.trim()]);
    let (code, id, _) = run_to_strings(&["compare", "-k", "4", s.trim(), ""], "");
    assert_eq!(code, 0);
    assert_eq!(id, "EQUAL\n", "phi was\n{phi}");
}

#[test]
fn classical_tables() {
    let out = ok(&["classical", &data("hopf.pd"), "-m", "3"]);
    assert!(out.lines().any(|l| l == "12\t1\t0"));
    assert!(out.lines().any(|l| l == "21\t1\t0"));
    for line in out.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        if f[0].len() >= 3 && f[0].contains('1') && f[0].contains('2') {
            assert_eq!(f[2], "1", "{line}");
        }
    }
    assert_eq!(out, std::fs::read_to_string(data("hopf.tsv")).unwrap());
    let b = ok(&["classical", &data("borromean.pd"), "-m", "3", "--format", "json"]);
    let t = MilnorTable::parse(&b).unwrap();
    assert_eq!(t.get(&[1, 2, 3]).unwrap().value().magnitude(), &1u32.into());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["mu4", "b[1,2]"]), 1);
    assert_eq!(code(&["mu4", "{\"n\":2"]), 1);
    assert_eq!(code(&["classical", "X[1,2]+"]), 1);
    assert_eq!(code(&["realize", "1 x1"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["mu4", "-m", "1", "a[1,2]"]), 2);
    assert_eq!(code(&["mu4", "-n", "1", "a[1,2]"]), 2);
    assert_eq!(code(&["classical", "X[1,3,2,4]+ X[3,1,4,5]+"]), 2);
    assert_eq!(code(&["mu4", "--indeterminacy", "/nonexistent/table.tsv", "a[1,2]"]), 2);
    assert_eq!(code(&["mu4", "{\"n\":1,\"strands\":[[{\"over\":1,\"arc\":5,\"sign\":1}]]}"]), 1);
    let (c, out, err) = run_to_strings(&["mu4", "a[1,2]\n  x"], "");
    assert_eq!(c, 1);
    assert!(out.is_empty());
    assert!(err.contains("2:3"), "{err}");
}

#[test]
fn reads_stdin_and_files() {
    let (c, out, _) = run_to_strings(&["phi", "-k", "3", "-"], "a[1,2]");
    assert_eq!(c, 0);
    assert_eq!(out, "1: 1\n2: x1\n");
    let (c, out, _) = run_to_strings(&["classical", "-", "-m", "2"], &std::fs::read_to_string(data("hopf.pd")).unwrap());
    assert_eq!(c, 0);
    assert!(out.contains("12\t1\t0"));
}

#[test]
fn binary_is_deterministic() {
    let run = || {
        let mut child = Command::new(env!("CARGO_BIN_EXE_milnor4"))
            .args(["mu4", "-m", "4", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(b"a[1,2] A[2,3] a[3,1] a[2,1]")
            .unwrap();
        let out = child.wait_with_output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
    let bad = Command::new(env!("CARGO_BIN_EXE_milnor4"))
        .args(["mu4", "-m", "1", "a[1,2]"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
