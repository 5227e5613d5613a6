mod common;

use std::fs;
use std::process::{Command, Output};

use common::corpus_dir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cipoints"))
        .args(args)
        .output()
        .expect("run cipoints")
}

fn file(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let out = run(&["second-moment", &file("cone2.var"), "--s", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "computed=112 lemma=112 EQUAL\n");

    let out = run(&["eta", "--q", "2", "--d", "1,1", "--n", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "12\n");

    let out = run(&["count", &file("cone13.var")]);
    assert_eq!(stdout(&out), "183\n");
    let out = run(&["count", &file("conic5.var"), "--ext", "2"]);
    assert_eq!(stdout(&out), "26\n");

    let out = run(&["hooley-census", &file("cone2.var")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "satisfying=14 total=16 HALF_MASS\n");
}

#[test]
fn verify_cone13() {
    let out = run(&["verify", &file("cone13.var")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "estimate,deviation,rhs,applicable,verdict\n\
         explicit_singular,0,1.79446673934e2,true,PASS\n\
         exponential_constant,0,1.46250000000e5,true,PASS\n\
         nonsingular,0,,false,N-A\n\
         normal_quadratic,0,7.28000000000e2,true,PASS\n\
         normal_uniform,0,1.12493199794e3,true,PASS\n"
    );
    assert_eq!(
        stderr(&out),
        "points=183 p_r=183 trivial_bound=366 trivial=PASS\n"
    );
}

#[test]
fn bounds_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.csv");
    let out = run(&[
        "bounds",
        &file("cone13.var"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "estimate,rhs,applicable,condition");
    assert_eq!(lines.len(), 6);
    assert!(!text.contains('\r'));
    // condition text with a comma is quoted
    assert_eq!(
        lines[4],
        "normal_quadratic,7.28000000000e2,true,\"normal (s = r-2): s = 0, r = 2\""
    );
    let names: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn bertini_scan_report() {
    let out = run(&["bertini-scan", &file("cone13.var"), "--workers", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value = |key: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key},")))
            .unwrap_or_else(|| panic!("missing {key}"))
            .to_string()
    };
    assert_eq!(value("mode"), "affine");
    assert_eq!(value("total"), "28561");
    assert_eq!(value("pass"), "26364");
    assert_eq!(value("fail"), "2196");
    assert_eq!(value("degenerate"), "1");
    assert_eq!(value("floor"), "15379");
    assert_eq!(value("check"), "PASS (pass >= floor)");
    // X2 = 0 cuts two lines meeting at the vertex
    assert_eq!(value("witness_1"), "\"gamma=(0,0,1,0) point=(0:0:0:1)\"");
    assert!(text.contains("witness_10,"));
    assert!(!text.contains("witness_11,"));
}

#[test]
fn failing_verdicts_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lie.var");
    // a wrong b'_2 = 0 demands N = p_2 = 13, but the smooth quadric has 16 points
    fs::write(
        &path,
        "[field]\np = 3\n[variety]\nnvars = 4\ndim = 2\npoly = 1:1,1,0,0 + 2:0,0,1,1\n",
    )
    .unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--betti", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("nonsingular,3,0.00000000000e0,true,FAIL"));
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.var");
    fs::write(
        &bad,
        "[field]\np = 4\n[variety]\nnvars = 2\ndim = 0\npoly = 1:0,1\n",
    )
    .unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["count".into(), "/nonexistent/file.var".into()],
        vec!["count".into(), bad.display().to_string()],
        vec![
            "count".into(),
            file("cone13.var"),
            "--ext".into(),
            "0".into(),
        ],
        vec!["verify".into(), file("smooth_quadric3.var")],
        vec!["bertini-scan".into(), file("conic5.var")],
        vec![
            "second-moment".into(),
            file("cone13.var"),
            "--s".into(),
            "1".into(),
        ],
        vec![
            "eta".into(),
            "--q".into(),
            "2".into(),
            "--d".into(),
            "1,1".into(),
            "--n".into(),
            "1".into(),
        ],
        vec!["frobnicate".into()],
        vec![
            "count".into(),
            file("cone13.var"),
            "--workers".into(),
            "0".into(),
        ],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&refs);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(stdout(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["bertini-scan", "--mode", "projective"],
        vec!["bertini-scan"],
        vec!["verify"],
    ]
    .iter()
    .enumerate()
    {
        let mut outputs = Vec::new();
        for workers in ["1", "2", "8"] {
            let path = dir.path().join(format!("{i}-{workers}.csv"));
            let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            full.insert(1, file("cone13.var"));
            full.extend([
                "--workers".into(),
                workers.into(),
                "--out".into(),
                path.display().to_string(),
            ]);
            let refs: Vec<&str> = full.iter().map(String::as_str).collect();
            assert_eq!(run(&refs).status.code(), Some(0));
            outputs.push(fs::read(&path).unwrap());
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    }
}
