use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn contlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contlin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_e4() {
    let o = contlin(&["check", data("e4.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact: true"));
}

#[test]
fn check_e5() {
    let o = contlin(&["check", data("e5.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact: false, failing pair (0,1)"));
}

#[test]
fn build_chain_e5_fails() {
    let o = contlin(&["build-chain", data("e5.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn build_chain_e4_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("e4.dot");
    let out = dir.path().join("chain.json");
    let o = contlin(&[
        "build-chain",
        data("e4.json").to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("->").count(), 1);
    let o = contlin(&["check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = contlin(&[
        "verify",
        "--oracle",
        "--samples",
        "10",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn numerical_data_e4() {
    let o = contlin(&["numerical-data", data("e4.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("sum m: 1 (r+1 = 1)"));
    assert!(s.contains("minimal: true"));
}

#[test]
fn limit_and_degree() {
    let file = data("line.json");
    let o = contlin(&["degree", file.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = contlin(&["limit", file.to_str().unwrap(), "--at", "infty"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_like::Value = serde_like::parse(&stdout(&o));
    assert_eq!(
        v.rows,
        vec![vec!["0", "0", "1", "0"], vec!["0", "0", "0", "1"]]
    );
}

/// Minimal reader for the bare subspace output, to avoid a JSON dependency here.
mod serde_like {
    pub struct Value {
        pub rows: Vec<Vec<String>>,
    }

    pub fn parse(text: &str) -> Value {
        let start = text.find("\"basis\"").unwrap();
        let body: String = text[start..]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let inner = body
            .trim_start_matches("\"basis\":[")
            .trim_end_matches("]}");
        let rows = inner
            .split("],[")
            .map(|r| {
                r.trim_matches(|c| c == '[' || c == ']')
                    .split(',')
                    .map(|x| x.trim_matches('"').to_string())
                    .collect()
            })
            .collect();
        Value { rows }
    }
}

#[test]
fn gen_check_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let o = contlin(&[
        "gen",
        "--d",
        "3",
        "--r",
        "1",
        "--delta",
        "2,1,1",
        "--seed",
        "3",
        "--pad",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = contlin(&["check", file.to_str().unwrap()]);
    assert!(stdout(&o).contains("exact: true"));
    let reduced = dir.path().join("r.json");
    let o = contlin(&[
        "reduce",
        file.to_str().unwrap(),
        "-o",
        reduced.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = contlin(&["verify", "--oracle", reduced.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn gen_is_deterministic() {
    let args = [
        "gen", "--d", "2", "--r", "1", "--delta", "2,1", "--seed", "42",
    ];
    assert_eq!(contlin(&args).stdout, contlin(&args).stdout);
}

#[test]
fn gen_non_exact_is_compatible() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n.json");
    let o = contlin(&[
        "gen",
        "--d",
        "2",
        "--r",
        "1",
        "--delta",
        "1,2",
        "--kind",
        "non-exact",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = contlin(&["check", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact: false"));
    assert_eq!(
        contlin(&["build-chain", file.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("truncated.json", "{"),
        (
            "version.json",
            r#"{"schema_version": 7, "kind": "lls", "payload": {}}"#,
        ),
        (
            "outside.json",
            r#"{"schema_version": 1, "kind": "lls", "payload": {"d": 1, "r": 0, "delta": [1], "spaces": {"0": [["1","0","0","0"]], "1": [["0","0","0","1"]]}}}"#,
        ),
        (
            "huge.json",
            r#"{"schema_version": 1, "kind": "subspace", "payload": {"split": {"dim1": 9, "dim2": 9}, "subspace": []}}"#,
        ),
    ];
    for (name, text) in cases {
        let file = dir.path().join(name);
        fs::write(&file, text).unwrap();
        assert_eq!(
            contlin(&["check", file.to_str().unwrap()]).status.code(),
            Some(2),
            "{name}"
        );
    }
    assert_eq!(
        contlin(&["degree", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        contlin(&["degree", data("e4.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
