use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn decmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decmin"))
        .args(args)
        .env_remove("DECMIN_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, text).unwrap();
    p
}

const PAIR: &str = r#"{"n": 4, "points": [[2, 1, 0, 0], [0, 0, 1, 2]]}"#;

#[test]
fn demos_pass() {
    for label in ["1.4", "3.2", "4.9"] {
        let o = decmin(&["demo", "--example", label]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAILED"));
    }
}

#[test]
fn flag_errors_exit_two() {
    assert_eq!(decmin(&["demo", "--example", "9.9"]).status.code(), Some(2));
    assert_eq!(decmin(&["certify", "x.json", "--base", "10"]).status.code(), Some(2));
    assert_eq!(decmin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(decmin(&["--help"]).status.code(), Some(0));
}

#[test]
fn decmin_on_non_convex_pair() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "pair.json", PAIR);
    let o = decmin(&["decmin", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dec-min elements: 2"));
    assert!(text.contains("linf diameter: 2"));

    let o = decmin(&["check-ic", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("integrally convex: false"));
    assert!(stdout(&o).contains("(1,1/2,1/2,1)"));

    let o = decmin(&["certify", &f, "--base", "10", "--method", "face"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diameter 2"));
}

#[test]
fn malformed_instances_exit_two() {
    let dir = TempDir::new().unwrap();
    for (i, text) in [
        "{",
        r#"{"n": 2, "points": [[1, 2, 3]]}"#,
        r#"{"n": 2, "points": [[1, 2.5]]}"#,
        r#"{"n": 2, "points": []}"#,
    ]
    .iter()
    .enumerate()
    {
        let f = write(&dir, &format!("bad{i}.json"), text);
        assert_eq!(decmin(&["decmin", &f]).status.code(), Some(2), "{text}");
    }
    assert_eq!(decmin(&["decmin", &path(&dir, "missing.json")]).status.code(), Some(2));
}

#[test]
fn certify_verify_round_trip_on_generated_instances() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "batch");
    let o = decmin(&[
        "gen", "--kind", "cube", "--n", "3", "--seed", "11", "--instances", "6", "--jobs", "3",
        "-o", &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut files = Vec::new();
    let mut certs = Vec::new();
    for seed in 11..17 {
        let inst = Path::new(&out).join(format!("instance-{seed}.json"));
        let inst = inst.to_str().unwrap().to_string();
        for method in ["face", "fenchel"] {
            let cert = path(&dir, &format!("{seed}-{method}.json"));
            let o = decmin(&["certify", &inst, "--base", "3", "--method", method, "-o", &cert]);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            files.push(inst.clone());
            certs.push(cert);
        }
    }
    let mut args: Vec<&str> = vec!["verify"];
    args.extend(files.iter().map(String::as_str));
    for c in &certs {
        args.push("--cert");
        args.push(c);
    }
    args.extend(["--jobs", "4"]);
    let first = decmin(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let second = decmin(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first).matches("\nverified").count(), 12);
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", r#"{"n": 2, "points": [[1, 2], [2, 1]]}"#);
    let o = decmin(&["certify", &f, "--base", "2", "--method", "fenchel"]);
    assert_eq!(o.status.code(), Some(0));
    let cert = stdout(&o).replace("\"beta\": \"6/1\"", "\"beta\": \"7/1\"");
    let c = write(&dir, "c.json", &cert);
    let o = decmin(&["verify", &f, "--cert", &c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL beta-minimum"));
}

#[test]
fn generator_spec_document_and_flags_agree() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"kind": "random", "n": 4, "radius": 2, "count": 2, "seed": 294463}"#,
    );
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    assert_eq!(decmin(&["gen", "--spec", &spec, "-o", &a]).status.code(), Some(0));
    let o = decmin(&[
        "gen", "--kind", "random", "--n", "4", "--radius", "2", "--count", "2", "--seed", "294463",
        "-o", &b,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let pair = write(&dir, "pair.json", PAIR);
    let o1 = decmin(&["decmin", &a]);
    let o2 = decmin(&["decmin", &pair]);
    assert_eq!(o1.stdout, o2.stdout);
}

#[test]
fn other_generator_kinds() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 4] = [
        &["--kind", "basepoly", "--n", "2", "--values", "0,2,2,3"],
        &["--kind", "diffbound", "--n", "2", "--lo", "0,0", "--hi", "2,2", "--gamma", "0,1;1,0"],
        &["--kind", "m2", "--n", "3", "--values", "0,1,1,2,1,2,2,2", "--values2", "0,1,1,2,1,2,2,2"],
        &["--kind", "cube", "--n", "3", "--density", "1/1"],
    ];
    let expected = ["(2 points)", "(7 points)", "(3 points)", "(8 points)"];
    for (args, want) in cases.iter().zip(expected) {
        let out = path(&dir, "g.json");
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        full.extend(["-o", &out]);
        let o = decmin(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(want), "{args:?}: {}", stdout(&o));
    }
    let out = path(&dir, "g.json");
    let o = decmin(&["gen", "--kind", "basepoly", "--n", "2", "--values", "0,1,1,3", "-o", &out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dimension_cap_comes_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "big.json", r#"{"n": 9, "points": [[0,0,0,0,0,0,0,0,0]]}"#);
    assert_eq!(decmin(&["check-ic", &f, "--exact"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_decmin"))
        .args(["check-ic", &f, "--exact"])
        .env("DECMIN_MAX_N", "9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("integrally convex: true"));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = decmin_cli::run(["decmin", "demo", "--example", "3.2"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, decmin(&["demo", "--example", "3.2"]).stdout);
}
