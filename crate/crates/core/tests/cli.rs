use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leecodes"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leecodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn construct_to_file_then_analyze() {
    let path = scratch("g4.txt");
    let o = run(&["construct", "gn", "--n", "4", "--out", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let params = json(&o);
    assert_eq!(params["volume"], "16");
    let a = run(&["analyze", path.to_str().unwrap()], "");
    assert_eq!(a.status.code(), Some(0));
    let r = json(&a);
    assert_eq!(r["d"], 4);
    assert_eq!(r["certificate"], "DiameterPerfect");
    assert_eq!(r["slack"], "0");
}

#[test]
fn analyze_golomb_welch() {
    let path = scratch("gw3.txt");
    run(&["construct", "gw", "--n", "3", "--out", path.to_str().unwrap()], "");
    let r = json(&run(&["analyze", path.to_str().unwrap()], ""));
    assert_eq!(r["certificate"], "Perfect");
    assert_eq!(r["covering_radius"], 1);
}

#[test]
fn analyze_key_order_is_fixed() {
    let o = run(&["analyze", "-"], "3 3\n1 -2 3\n-2 3 1\n3 1 -2\n");
    let text = stdout(&o);
    let keys = [
        "\"n\"",
        "\"d\"",
        "\"witness\"",
        "\"volume\"",
        "\"period\"",
        "\"q\"",
        "\"density\"",
        "\"covering_radius\"",
        "\"bound\"",
        "\"certificate\"",
        "\"slack\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{}", text);
    let r = json(&o);
    assert_eq!(r["density"]["rational"], "18/19");
}

#[test]
fn kronecker_and_puncture_from_files() {
    let a = scratch("n2.txt");
    let b = scratch("mink.txt");
    run(&["construct", "n2perfect", "--d", "2", "--out", a.to_str().unwrap()], "");
    run(&["construct", "minkowski3", "--d", "6", "--out", b.to_str().unwrap()], "");
    let k = scratch("k.txt");
    let o = run(
        &[
            "construct",
            "kronecker",
            "--a",
            a.to_str().unwrap(),
            "--b",
            b.to_str().unwrap(),
            "--out",
            k.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let p = json(&o);
    assert_eq!((p["n"].as_u64(), p["d"].as_u64()), (Some(6), Some(12)));
    assert_eq!(p["d_source"], "computed");
    assert_eq!(p["density"]["rational"], "648/1805");

    let g = scratch("g5.txt");
    run(&["construct", "gn", "--n", "5", "--out", g.to_str().unwrap()], "");
    let o = run(&["construct", "puncture", "--input", g.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 4\n"));
}

#[test]
fn construct_double_and_hadamard() {
    let o = run(&["construct", "double", "--n", "3", "--verify"], "");
    let line = stdout(&o).lines().last().unwrap().strip_prefix("# params ").unwrap().to_string();
    let p: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!((p["n"].as_u64(), p["d"].as_u64()), (Some(6), Some(4)));
    assert_eq!((p["volume"].as_str(), p["q"].as_str()), (Some("24"), Some("12")));

    let o = run(&["construct", "hadamard", "--q", "11"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"volume\":\"2985984\""));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["construct", "minkowski3", "--d", "4"], "").status.code(), Some(2));
    assert_eq!(run(&["construct", "scaled", "--n", "3", "--d", "6"], "").status.code(), Some(2));
    assert_eq!(run(&["bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["analyze", "-"], "garbage\n").status.code(), Some(3));
    assert_eq!(run(&["analyze", "/nonexistent/file"], "").status.code(), Some(3));
    assert_eq!(run(&["analyze", "-", "--min-dist-cap", "3"], "1 1\n9\n").status.code(), Some(4));
    assert_eq!(run(&["transform", "--d", "4", "--mode", "disc"], "1 2 3\n").status.code(), Some(3));
}

#[test]
fn transform_twice_is_identity() {
    let input = "1 0 0 0\n3 -1 4 1\n-5 9 2 -6\n0 0 0 7\n";
    let once = run(&["transform", "--d", "2", "--mode", "disc"], input);
    assert_eq!(stdout(&once).lines().next(), Some("0 1 1 1"));
    let twice = run(&["transform", "--d", "2", "--mode", "disc"], &stdout(&once));
    assert_eq!(stdout(&twice), input);

    let pts: String = (0..16).map(|i| format!("{}{}", i - 8, if i == 15 { "\n" } else { " " })).collect();
    let once = run(&["transform", "--d", "4", "--mode", "disc"], &pts);
    assert_eq!(once.status.code(), Some(0));
    let twice = run(&["transform", "--d", "4", "--mode", "disc"], &stdout(&once));
    assert_eq!(stdout(&twice), pts);

    let cont = run(&["transform", "--d", "2", "--mode", "cont"], "2 0 0 0\n");
    assert_eq!(stdout(&cont), "1 1 1 1\n");
}

#[test]
fn density_is_deterministic() {
    let a = run(&["density", "--max-n", "10"], "");
    let b = run(&["density", "--max-n", "10"], "");
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().any(|l| l.starts_with("6,") && l.ends_with(",648/1805,0.359003")));
    let j = json(&run(&["density", "--max-n", "6", "--json"], ""));
    assert_eq!(j["rows"].as_array().unwrap().len(), 5);
    assert_eq!(j["survey_lower_bounds"][1]["density"]["rational"], "18/19");
}
