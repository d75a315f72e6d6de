use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SLIT: &str = r#"{"outer": null, "slits": [[[0, -1], [0, 1]]]}"#;
const SQUARE_SLIT: &str =
    r#"{"outer": [[0, 0], [1, 0], [1, 1], [0, 1]], "slits": [[[0.5, 0], [0.5, 0.75]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_innerdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn distance_across_a_slit() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "slit.json", SLIT);
    let out = run(&["distance", s(&d), "-1,0", "1,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!((value(&text, "distance") - 8f64.sqrt()).abs() < 1e-12);
    assert_eq!(value(&text, "euclidean"), 2.0);
    assert_eq!(value(&text, "h1_E"), 2.0);
    for key in ["bound", "classic_bound", "margin"] {
        value(&text, key);
    }
}

#[test]
fn distance_with_oracle_path_and_svg() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "slit.json", SLIT);
    let path = dir.path().join("path.json");
    let svg = dir.path().join("pic.svg");
    let out = run(&[
        "distance", s(&d), "-1,0", "1,0", "--oracle", "0.01", "--emit-path", s(&path), "--svg",
        s(&svg),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let exact = value(&text, "distance");
    let oracle = value(&text, "oracle");
    assert!(oracle >= exact - 1e-9 && oracle <= 1.02 * exact);

    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!((doc["length"].as_f64().unwrap() - exact).abs() < 1e-15);
    let verts = doc["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 3);
    assert_eq!(verts[1][1].as_f64().map(f64::abs), Some(1.0));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", "{\"outer\": [[0, 0], [1, 0]");
    let out = run(&["distance", s(&bad), "0,0", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed JSON"));

    let typed = file(&dir, "typed.json", r#"{"holes": [[[0, 0], [1, 0], [0, "x"]]]}"#);
    let out = run(&["distance", s(&typed), "0,0", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$.holes[0][2][1]"), "{}", stderr(&out));

    let inexact = file(&dir, "inexact.json", r#"{"points": [["1/2^2", "1/3"]]}"#);
    let out = run(&["distance", s(&inexact), "0,0", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$.points[0][1]"));

    let d = file(&dir, "slit.json", SLIT);
    assert_eq!(run(&["distance", s(&d), "0,0.5", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["distance", s(&d), "zero", "1,0"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["distance", s(&missing), "1,0", "2,0"]).status.code(), Some(2));
}

#[test]
fn verify_fixed_pairs() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "sq.json", SQUARE_SLIT);
    let pairs = file(
        &dir,
        "pairs.csv",
        "x1,y1,x2,y2\n0.25,0.5,0.75,0.5\n0.1,0.1,0.9,0.1\n0.4,0.9,0.6,0.2\n",
    );
    let out = run(&["verify", s(&d), "--pairs", s(&pairs)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("x1,y1,x2,y2,distance,euclidean,h1_E,q,bound,classic_bound,margin,satisfied")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(!text.contains('\r'));
}

#[test]
fn verify_empty_and_bad_pairs() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "sq.json", SQUARE_SLIT);
    let empty = file(&dir, "empty.csv", "");
    let out = run(&["verify", s(&d), "--pairs", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);

    let bad = file(&dir, "bad.csv", "0.25,0.5,0.75\n");
    let out = run(&["verify", s(&d), "--pairs", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.csv:1"));

    let outside = file(&dir, "outside.csv", "0.25,0.5,2,2\n");
    assert_eq!(run(&["verify", s(&d), "--pairs", s(&outside)]).status.code(), Some(2));
    assert_eq!(run(&["verify", s(&d)]).status.code(), Some(2));
}

#[test]
fn verify_random_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let comb = run(&["export-comb", "6"]);
    assert_eq!(comb.status.code(), Some(0));
    let d = file(&dir, "comb6.json", &stdout(&comb));
    let a = run(&["verify", s(&d), "--random", "100", "--seed", "7"]);
    let b = run(&["verify", s(&d), "--random", "100", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 101);
    let c = run(&["verify", s(&d), "--random", "100", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn comb_command() {
    let out = run(&["comb", "--n-list", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let ratios: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 2);
    assert!(ratios[1] >= ratios[0]);

    let out = run(&["comb", "--n-list", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let ratio: f64 = stdout(&out).lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(ratio <= 1.0);

    assert_eq!(run(&["comb", "--n-list", "1"]).status.code(), Some(2));
    assert_eq!(run(&["comb", "--n-list", "2,x"]).status.code(), Some(2));
}

#[test]
fn painleve_command() {
    let dir = TempDir::new().unwrap();
    let k = file(&dir, "k.json", "[[[0, 0], [1, 0]]]");
    let out = run(&["painleve", s(&k), "--clearance", "0.1", "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(value(&text, "sum_boundary") <= 2.1);
    assert!((value(&text, "bound") - 2.1).abs() < 1e-15);
    assert!(text.contains("satisfied true"));

    // Far below floating-point resolution the certificate cannot close.
    let out = run(&["painleve", s(&k), "--epsilon", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("satisfied false"));

    let split = file(&dir, "split.json", "[[[0, 0], [1, 0]], [[2, 0], [3, 0]]]");
    assert_eq!(run(&["painleve", s(&split)]).status.code(), Some(2));
    assert_eq!(run(&["painleve", s(&k), "--epsilon", "-1"]).status.code(), Some(2));
}

#[test]
fn fractal_command() {
    let out = run(&["fractal", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("32 balls, radius 0.03125, diameter_sum 2"));

    let out = run(&["fractal", "--gap-check", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "actual 0.41970 ≥ bound 0.28701");

    let out = run(&["fractal", "--hull-probe", "3", "--indices", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("satisfied true"));

    assert_eq!(run(&["fractal", "--hull-probe", "3", "--indices", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["fractal", "--hull-probe", "3"]).status.code(), Some(2));
    assert_eq!(run(&["fractal"]).status.code(), Some(2));
    assert_eq!(run(&["fractal", "--level", "3", "--gap-check", "3"]).status.code(), Some(2));
}

#[test]
fn canonical_round_trip() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&run(&["export-comb", "4"]));
    let a = file(&dir, "a.json", &text);
    let again = run(&["canonical", s(&a)]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout(&again), text);

    let loose = file(
        &dir,
        "loose.json",
        r#"{ "slits": [[[0.5, "0/2^0"], [0.5, "3/2^2"]]], "outer": [[0,0],[1,0],[1,1],[0,1]] }"#,
    );
    let canon = stdout(&run(&["canonical", s(&loose)]));
    let b = file(&dir, "b.json", &canon);
    assert_eq!(stdout(&run(&["canonical", s(&b)])), canon);
    assert!(canon.contains("7.5000000000000000e-1"));
}

#[test]
fn help_mentions_thread_variable() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("RAYON_NUM_THREADS"));
}
