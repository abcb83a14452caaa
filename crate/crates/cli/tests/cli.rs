use gourds_core::board::serialize_board;
use gourds_core::fixtures::{hexagon, star_of_david, triangle, two_lobe};
use gourds_core::generate::random_configuration;
use gourds_core::puzzle::serialize_config;
use gourds_core::{Configuration, Gourd, HexCoord, Label};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn gourds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gourds")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn single_gourd() -> Configuration {
    Configuration {
        gourds: vec![Gourd::new(HexCoord::new(0, 0), Label::Color(1), HexCoord::new(1, 0), Label::Color(2))],
        empty: HexCoord::new(0, 1),
    }
}

#[test]
fn solve_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let b = hexagon(2);
    let start = random_configuration(&b, 200, 1);
    let target = random_configuration(&b, 200, 2);
    let bp = put(&dir, "board.txt", &serialize_board(&b));
    let sp = put(&dir, "start.txt", &serialize_config(&start));
    let tp = put(&dir, "target.txt", &serialize_config(&target));
    let plan = dir.path().join("plan.txt");
    for strategy in ["cubic", "quadratic"] {
        let o = gourds(&[
            "solve", "--board", s(&bp), "--start", s(&sp), "--target", s(&tp), "--strategy", strategy, "--out",
            s(&plan),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let o = gourds(&["verify", "--board", s(&bp), "--start", s(&sp), "--target", s(&tp), s(&plan)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("target reached"));
    }
    // the plan does not lead back to the start
    let o = gourds(&["verify", "--board", s(&bp), "--start", s(&sp), "--target", s(&sp), s(&plan)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn oracle_counts_the_triangle() {
    let dir = TempDir::new().unwrap();
    let bp = put(&dir, "board.txt", &serialize_board(&triangle()));
    let cp = put(&dir, "config.txt", &serialize_config(&single_gourd()));
    let pivot = gourds(&["oracle", "--board", s(&bp), "--config", s(&cp)]);
    assert_eq!(code(&pivot), 0);
    assert!(stdout(&pivot).starts_with("states: 6\n"), "{}", stdout(&pivot));
    let sharp = gourds(&["oracle", "--board", s(&bp), "--config", s(&cp), "--mode", "sharp"]);
    assert!(stdout(&sharp).starts_with("states: 3\n"), "{}", stdout(&sharp));
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ok = put(&dir, "hex.txt", &serialize_board(&hexagon(1)));
    assert_eq!(code(&gourds(&["validate", "--board", s(&ok)])), 0);
    let star = put(&dir, "star.txt", &serialize_board(&star_of_david()));
    let o = gourds(&["validate", "--board", s(&star)]);
    assert_eq!(code(&o), 1);
    let junk = put(&dir, "junk.txt", "not a board\n");
    assert_eq!(code(&gourds(&["validate", "--board", s(&junk)])), 2);
    assert_eq!(code(&gourds(&["validate", "--board", "/nonexistent/board.txt"])), 2);
    assert_eq!(code(&gourds(&["frobnicate"])), 2);
}

#[test]
fn scramble_is_seeded() {
    let dir = TempDir::new().unwrap();
    let b = hexagon(2);
    let bp = put(&dir, "board.txt", &serialize_board(&b));
    let cp = put(&dir, "config.txt", &serialize_config(&random_configuration(&b, 0, 0)));
    let run = |seed: &str| stdout(&gourds(&["scramble", "--board", s(&bp), "--config", s(&cp), "--steps", "50", "--seed", seed]));
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn reduce_then_place() {
    let dir = TempDir::new().unwrap();
    let sat = put(&dir, "sat.txt", "gourds-1in3 v1\nc a b c\nc a b c\nc a b c\n");
    let inst = dir.path().join("inst.txt");
    assert_eq!(code(&gourds(&["reduce", "--formula", s(&sat), "--out", s(&inst)])), 0);
    assert_eq!(code(&gourds(&["place", "--board", s(&inst)])), 0);

    let unsat = put(&dir, "unsat.txt", "gourds-1in3 v1\nc a b c\nc a b d\nc a c d\nc b c d\n");
    assert_eq!(code(&gourds(&["reduce", "--formula", s(&unsat), "--out", s(&inst)])), 0);
    let o = gourds(&["place", "--board", s(&inst)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("UNSAT"));
}

#[test]
fn decompose_and_bench() {
    let dir = TempDir::new().unwrap();
    let bp = put(&dir, "board.txt", &serialize_board(&two_lobe(6).0));
    let o = gourds(&["decompose", "--board", s(&bp)]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).is_empty());

    let o = gourds(&["bench", "--strategy", "cubic", "--limit", "12"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "n,strategy,moves_s1,moves_s2,moves_s3,lower_bound,wall_time");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("8,cubic,"));
}
