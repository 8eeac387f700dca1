use std::process::{Command, Output};

use serde_json::Value;

fn alcove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcove"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

#[test]
fn enumerate_gl3_json() {
    let o = alcove(&[
        "enumerate",
        "--family",
        "GL",
        "--size",
        "3",
        "--mu",
        "1,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["schema"], "musets/1");
    assert!(r["version"].is_string());
    assert!(r["fingerprint"].is_string());
    assert_eq!(r["adm"], r["perm"]);
    assert_eq!(r["perm"], r["perm_st"]);
    assert_eq!(r["adm"].as_array().unwrap().len(), 7);
}

#[test]
fn enumerate_b2_has_thirteen() {
    let o = alcove(&[
        "enumerate",
        "--family",
        "B",
        "--size",
        "2",
        "--mu",
        "1,0",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(lines.next(), None);
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("adm"), "13");
}

#[test]
fn enumerate_trivial_mu() {
    let o = alcove(&[
        "enumerate",
        "--family",
        "GL",
        "--size",
        "2",
        "--mu",
        "0,0",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[3..6], &["1", "1", "1"]);
}

#[test]
fn non_dominant_mu_is_named() {
    let o = alcove(&[
        "enumerate",
        "--family",
        "GL",
        "--size",
        "3",
        "--mu",
        "0,1,0",
    ]);
    assert_eq!(code(&o), 2);
    let e = stderr_json(&o);
    assert_eq!(e["error"]["kind"], "not_dominant");
    assert!(e["error"]["message"].as_str().unwrap().contains("α_1"));
}

#[test]
fn bad_input_is_config_error() {
    for args in [
        &["enumerate", "--family", "GL", "--size", "3", "--mu", "1,0"][..],
        &[
            "enumerate",
            "--family",
            "GL",
            "--size",
            "3",
            "--mu",
            "1,x,0",
        ],
        &[
            "enumerate",
            "--family",
            "B",
            "--size",
            "2",
            "--mu",
            "1,0",
            "--format",
            "svg",
        ],
        &["verify", "no-such-statement"],
    ] {
        let o = alcove(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(stderr_json(&o)["error"]["message"].is_string());
    }
}

#[test]
fn guards_exit_three() {
    let o = alcove(&[
        "enumerate",
        "--family",
        "C",
        "--size",
        "3",
        "--mu",
        "2,2,1",
        "--max-length",
        "5",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(stderr_json(&o)["error"]["kind"], "guard");
    let o = alcove(&[
        "enumerate",
        "--family",
        "GL",
        "--size",
        "3",
        "--mu",
        "2,1,0",
        "--max-points",
        "2",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "prop9.7", "--size", "4", "--mu", "1,1,0,0"][..],
        &["verify", "sec11-counts"],
        &["verify", "thm3.3", "--size", "2", "--mu", "0,0"],
    ] {
        let o = alcove(args);
        assert_eq!(
            code(&o),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }
    let o = alcove(&["verify", "prop8.1", "--format", "json"]);
    let v = stdout_json(&o);
    assert_eq!(v["schema"], "verdict/1");
    assert_eq!(v["statement"], "prop8.1");
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_list_names_every_statement() {
    let o = alcove(&["verify", "list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for id in [
        "thm3.2",
        "lem5.8",
        "prop9.6",
        "thm10.1",
        "sec11",
        "sec11-counts",
    ] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(id)),
            "{id}"
        );
    }
}

#[test]
fn counterexample_examples() {
    for (family, size) in [("A", "5"), ("C", "3")] {
        let o = alcove(&["counterexample", "--family", family, "--size", size]);
        assert_eq!(code(&o), 0);
        assert!(String::from_utf8(o.stdout).unwrap().contains("none exists"));
    }
    let o = alcove(&[
        "counterexample",
        "--family",
        "D",
        "--size",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let c = stdout_json(&o);
    assert_eq!(c["found"], true);
    assert_eq!(c["verified"], true);
    assert_eq!(c["checks"]["in_perm"], true);
    assert_eq!(c["checks"]["in_adm"], false);
    assert_eq!(c["checks"]["length"], c["checks"]["length_t_mu"]);
}

#[test]
fn draw_needs_rank_two() {
    let o = alcove(&[
        "draw", "--family", "B", "--size", "3", "--set", "adm", "--mu", "1,0,0",
    ]);
    assert_eq!(code(&o), 2);
    let o = alcove(&[
        "draw", "--family", "GL", "--size", "3", "--set", "perm", "--mu", "1,0,0",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn draw_shades_adm() {
    let o = alcove(&[
        "draw", "--family", "A", "--size", "2", "--set", "adm", "--mu", "1,0,0",
    ]);
    assert_eq!(code(&o), 0);
    let svg = String::from_utf8(o.stdout).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 7);
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("b2-{i}.json"));
            let o = alcove(&[
                "enumerate",
                "--family",
                "B",
                "--size",
                "2",
                "--mu",
                "1,1",
                "--format",
                "json",
                "--output",
                path.to_str().unwrap(),
            ]);
            assert_eq!(code(&o), 0);
            assert!(o.stdout.is_empty());
            std::fs::read(path).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let single = alcove(&[
        "--threads",
        "1",
        "enumerate",
        "--family",
        "B",
        "--size",
        "2",
        "--mu",
        "1,1",
        "--format",
        "json",
    ]);
    assert_eq!(single.stdout, runs[0]);

    let a = alcove(&[
        "draw", "--family", "G2", "--size", "2", "--set", "cone", "--w", "1,2",
    ]);
    let b = alcove(&[
        "draw", "--family", "G2", "--size", "2", "--set", "cone", "--w", "1,2",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn describe_json() {
    let o = alcove(&[
        "describe", "--family", "C", "--size", "2", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let d = stdout_json(&o);
    assert_eq!(d["rank"], 2);
    assert_eq!(d["weyl_order"], "8");
    assert_eq!(d["simple_roots"].as_array().unwrap().len(), 2);
}
