use std::process::{Command, Output};

fn mtau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mtau(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data_lines(csv: &str) -> usize {
    csv.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count()
}

#[test]
fn generate_writes_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h21.csv");
    let out = mtau(&["generate", "hex", "--n", "2", "--m", "1", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let header = String::from_utf8(out.stderr).unwrap();
    assert!(header.contains("v=12 e=18"), "{header}");
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_lines(&body), 18);

    let mm = stdout(&["generate", "mm", "--a", "4", "--b", "2"]);
    assert_eq!(data_lines(&mm), 48);
    let tt = mtau(&["generate", "tt", "--a", "3", "--b", "3", "--c", "2"]);
    assert!(String::from_utf8(tt.stderr).unwrap().contains("v=22 e=33"));
}

#[test]
fn published_cells() {
    assert!(stdout(&["tau", "hex", "--n", "4", "--m", "4", "--normalized"]).contains("1/57.21661"));
    assert!(stdout(&["tau", "mm", "--a", "5", "--b", "5", "--normalized"]).contains("1/72.89444"));
    let table = stdout(&["table", "hex", "--ns", "5", "--ms", "5,50"]);
    assert!(table.contains("1/57.21661") && table.contains("1/86.28266"), "{table}");
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle3.csv");
    std::fs::write(&path, "# triangle\n0,1,1\n1,2,1\n2,0,1\n").unwrap();
    let text = stdout(&["tau", "--input", path.to_str().unwrap(), "--normalized"]);
    assert!(text.contains("tau = 0.0833333"), "{text}");
    let fixed = stdout(&["tau", "--input", path.to_str().unwrap(), "--method", "fixed_point", "--base", "2"]);
    assert!(fixed.contains("tau = 0.2500000"), "{fixed}");
}

#[test]
fn json_is_deterministic() {
    let args = ["tau", "random", "--v", "9", "--chords", "4", "--seed", "7", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["method"], "trace");
    assert_eq!(v["v"], 9);
    let tau = v["tau"].as_f64().unwrap();
    let sum = v["first_term"].as_f64().unwrap() + v["second_term"].as_f64().unwrap();
    assert!((tau - sum).abs() < 1e-15);
}

#[test]
fn large_hex_routes() {
    let text = stdout(&["tau", "hex", "--n", "200", "--m", "200", "--normalized"]);
    assert!(text.contains("method: analytic"), "{text}");
    let out = mtau(&["tau", "hex", "--n", "200", "--m", "200", "--method", "trace"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--size-limit"));
}

#[test]
fn exit_codes() {
    assert_eq!(mtau(&["tau", "hex", "--n", "2"]).status.code(), Some(2));
    assert_eq!(mtau(&["tau", "tt", "--a", "3", "--b", "3", "--c", "5"]).status.code(), Some(2));
    assert_eq!(mtau(&["tau", "--input", "/nonexistent/graph.csv"]).status.code(), Some(2));
    assert_eq!(mtau(&["bogus"]).status.code(), Some(2));
    let out = mtau(&["verify", "--suite", "kirchhoff", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL kirchhoff"));
}

#[test]
fn verify_suites_pass() {
    let trig = stdout(&["verify", "--suite", "trig", "--n-max", "10"]);
    assert!(trig.contains("PASS trig") && trig.contains("9 rational matches"), "{trig}");
    let all = stdout(&["verify", "--n-max", "6", "--count", "5"]);
    assert_eq!(all.lines().filter(|l| l.starts_with("PASS")).count(), 6, "{all}");
}

#[test]
fn kirchhoff_and_spectrum() {
    let kf = stdout(&["kirchhoff", "complete", "--v", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&kf).unwrap();
    assert!((v["kirchhoff_index"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    let spec = stdout(&["spectrum", "hex", "--n", "2", "--m", "3", "--format", "csv"]);
    assert_eq!(spec.lines().count(), 1 + 24);
}
