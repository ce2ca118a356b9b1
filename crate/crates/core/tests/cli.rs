use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gausslink(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gausslink"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute(code: &str) -> Value {
    let o = gausslink(&["compute", "-"], code);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn torus_pipeline() {
    let code = stdout(&gausslink(&["generate", "torus", "2"], ""));
    let r = compute(&code);
    assert_eq!(r["S"], 4);
    assert_eq!(r["T"], 2);
}

#[test]
fn dn_pipeline() {
    let code = stdout(&gausslink(&["generate", "dn", "3"], ""));
    let r = compute(&code);
    assert_eq!(r["T"], -3);
    assert_eq!(r["rii_lower_bound"], 3);
}

#[test]
fn report_keys_are_ordered() {
    let o = gausslink(&["compute", "-"], "/");
    assert_eq!(
        stdout(&o).trim(),
        r#"{"lk12":0,"lk21":0,"S":0,"T":0,"crossings":0,"components":2,"rii_lower_bound":0}"#
    );
}

#[test]
fn malformed_input_exits_3_with_offset() {
    let o = gausslink(&["compute", "-"], "O1+X");
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("byte 3"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gausslink(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(
        gausslink(&["generate", "l", "3"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        gausslink(&["generate", "torus", "1", "2"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gausslink(&["verify", "--trials", "0"], "").status.code(),
        Some(2)
    );
    assert_eq!(gausslink(&["verify", "--bogus"], "").status.code(), Some(2));
    assert_eq!(gausslink(&["--help"], "").status.code(), Some(0));
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(
        gausslink(&["compute", "/nonexistent/x.gauss"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        gausslink(&["compute", "-"], "O1+O2+/U1+U2+").status.code(),
        Some(0)
    );
    assert_eq!(
        gausslink(&["compute", "-"], "O1+U1+").status.code(),
        Some(3)
    );
}

#[test]
fn generate_l_and_k() {
    for (m, n) in [(0, 1), (2, 5), (4, 3)] {
        let code = stdout(&gausslink(
            &["generate", "l", &m.to_string(), &n.to_string()],
            "",
        ));
        assert_eq!(compute(&code)["S"], n * (n - m));
        let code = stdout(&gausslink(
            &["generate", "k", &m.to_string(), &n.to_string()],
            "",
        ));
        assert_eq!(compute(&code)["T"], (n - m) * (n - m) - (n + m));
    }
}

#[test]
fn moves_list_and_apply_agree() {
    let d2 = stdout(&gausslink(&["generate", "dn", "2"], ""));
    let o = gausslink(
        &[
            "moves",
            "list",
            "-",
            "--max-crossings",
            "4",
            "--classes",
            "omega2-",
        ],
        &d2,
    );
    let listed: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sites = listed.as_array().unwrap();
    assert_eq!(sites.len(), 2);
    for s in sites {
        assert!(s["move"].as_str().unwrap().starts_with("Ω2"));
        let index = s["index"].to_string();
        let out = stdout(&gausslink(
            &[
                "moves",
                "apply",
                "-",
                "--max-crossings",
                "4",
                "--index",
                &index,
            ],
            &d2,
        ));
        let r = compute(&out);
        assert_eq!(r["T"], -1);
        assert_eq!(r["crossings"], 2);
    }
    let o = gausslink(&["moves", "apply", "-", "--index", "100000"], &d2);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_streams_verdicts() {
    let o = gausslink(
        &[
            "verify",
            "--seed",
            "7",
            "--trials",
            "40",
            "--max-crossings",
            "6",
            "--claims",
            "s-invariance,t-behavior,codec",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|v| v["pass"] == true));
    assert_eq!(lines[1]["claim"], "t-behavior");
    let again = gausslink(
        &[
            "verify",
            "--seed",
            "7",
            "--trials",
            "40",
            "--max-crossings",
            "6",
            "--claims",
            "s-invariance,t-behavior,codec",
            "--sequential",
        ],
        "",
    );
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn verify_failure_exits_1() {
    // a handful of tiny trials cannot cover every Ω3 type
    let o = gausslink(
        &[
            "verify",
            "--trials",
            "3",
            "--max-crossings",
            "2",
            "--claims",
            "table2",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["counterexample"]["detail"]
        .as_str()
        .unwrap()
        .contains("under-coverage"));
}

#[test]
fn search_finds_d1() {
    let dir = std::env::temp_dir().join(format!("gausslink-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let from = dir.join("d1.gauss");
    let to = dir.join("unlink.gauss");
    std::fs::write(&from, stdout(&gausslink(&["generate", "dn", "1"], ""))).unwrap();
    std::fs::write(&to, "/\n").unwrap();
    let o = gausslink(
        &[
            "search",
            "--from",
            from.to_str().unwrap(),
            "--to",
            to.to_str().unwrap(),
            "--max-crossings",
            "4",
            "--max-states",
            "10000",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["status"], "found");
    assert_eq!(r["min_negative_omega2"], 1);
    assert_eq!(r["witness"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
