use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metaplectic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_examples() {
    let o = run(&["hilbert", "-a", "-1", "-b", "-1", "--place", "inf"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");

    let o = run(&["lfactor", "--r", "2", "--alphas", "1,1", "--chi", "1"]);
    assert!(stdout(&o).contains("sym: 1 - 3X + 3X^2 - X^3"));

    let o = run(&["poles", "--r", "3", "--trivial", "true"]);
    assert_eq!(stdout(&o).trim(), "normalizer: {1/4, 3/4}\nL-function: {0, 1}");
    let o = run(&["poles", "--r", "3", "--trivial", "false"]);
    assert_eq!(stdout(&o).trim(), "normalizer: {}\nL-function: {}");
}

#[test]
fn validation_errors_exit_two() {
    let o = run(&["hilbert", "-a", "0", "-b", "1", "--place", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(run(&["hilbert", "-a", "1", "-b", "1", "--place", "4"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn suite_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["check", "--suite", "symbols", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["suite"], "symbols");
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["cases"].as_array().unwrap().len() as u64, v["summary"]["pass"].as_u64().unwrap());
}

#[test]
fn weilrep_check_emits_json() {
    let o = run(&["weilrep-check", "--p", "3", "--N", "2", "--suite", "parity"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["error"], 0);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    assert_eq!(run(&["weilrep-check", "--p", "3", "--N", "1", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn euler_reads_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, r#"[{"p": 2, "alphas": ["1"]}, {"p": 3, "alphas": ["1"]}, {"p": 5, "alphas": ["1"], "chi": "ramified"}]"#)
        .unwrap();
    let o = run(&["euler", "--table", path.to_str().unwrap(), "--s", "2", "--cutoff", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first: f64 = stdout(&o).lines().next().unwrap().parse().unwrap();
    // (1 - 1/4)^{-1} (1 - 1/9)^{-1}
    assert!((first - 1.5).abs() < 1e-12);
    assert!(stdout(&o).contains("tail bound"));

    std::fs::write(&path, r#"[{"p": 2, "alphas": ["1"]}, {"p": 2, "alphas": ["3"]}]"#).unwrap();
    let o = run(&["euler", "--table", path.to_str().unwrap(), "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate prime"));
}
