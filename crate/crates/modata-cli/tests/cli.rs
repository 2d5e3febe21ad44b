use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modata::format::parse_table;
use modata::Integer;
use tempfile::TempDir;

fn modata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modata"))
        .args(args)
        .env_remove("MODATA_MAX_DEGREE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const RANK2: &str = "rank 2 role eigen\n1 1\n1 -1\n";
const Z4_ALLEN: &str = "rank 4 disc -1 role allen\n1 1 1 1\n1 r -1 -r\n1 -1 1 -1\n1 -r -1 r\n";
const DISC2: &str = "rank 3 disc 2 role eigen\n1 1 2\n1 1 -2\n1 -1 0\n";

#[test]
fn verify_rank2_as_integral_fourier_passes() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "r2.txt", RANK2);
    let o = modata(&["verify", s(&f), "--as", "integral-fourier"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: pass"));
}

#[test]
fn verify_z4_as_integral_fourier_fails() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "z4.txt", Z4_ALLEN);
    let o = modata(&["verify", s(&f), "--as", "integral-fourier"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: fail"));
}

#[test]
fn verify_eigen_structured_output() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "r2.txt", RANK2);
    let o = modata(&["verify", s(&f), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall:"));
}

#[test]
fn malformed_entry_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "bad.txt",
        "rank 2 disc 2 role eigen\n1 1\n1 1+sqrt\n",
    );
    let o = modata(&["verify", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn conversion_leaving_the_field_exits_3() {
    let dir = TempDir::new().unwrap();
    let out = modata(&["catalog", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let o = modata(&[
        "convert",
        s(&dir.path().join("rank5-P1.txt")),
        "--to",
        "allen",
    ]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn eigen_allen_eigen_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.txt", DISC2);
    let o = modata(&["convert", s(&f), "--to", "allen", "--to", "eigen"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let back = parse_table::<Integer>(&stdout(&o)).unwrap();
    let orig = parse_table::<Integer>(DISC2).unwrap();
    assert_eq!(back, orig);
}

#[test]
fn screen_directory_reports_every_file() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.txt", RANK2);
    write(dir.path(), "b.txt", "rank 2 role eigen\n1 1\n1 x\n");
    write(dir.path(), "c.txt", "degrees: 1 2 2\n");
    write(dir.path(), "d.txt", DISC2);
    let o = modata(&["screen", s(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "{text}");
    assert!(lines[0].ends_with("a.txt: admissible"));
    assert!(lines[1].contains("b.txt: parse error"));
    assert!(lines[2].contains("c.txt: rejected") && lines[2].contains("degree_multiple"));
    assert!(lines[3].ends_with("d.txt: admissible"));
}

#[test]
fn screen_single_admissible_file() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "a.txt", RANK2);
    assert_eq!(modata(&["screen", s(&f)]).status.code(), Some(0));
}

#[test]
fn screen_accepts_parenthesised_degrees() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "c.txt", "(1,2,2)\n");
    let o = modata(&["screen", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("degree_multiple"));
}

#[test]
fn classify_rank2_writes_a_readable_survivor() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("surv");
    let o = modata(&["classify", "--mode", "rank2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let files: Vec<PathBuf> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1);
    let t = parse_table::<Integer>(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(t, parse_table::<Integer>(RANK2).unwrap());
}

#[test]
fn classify_rank_must_match_mode() {
    let dir = TempDir::new().unwrap();
    let o = modata(&[
        "classify",
        "--mode",
        "rank2",
        "--rank",
        "3",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_integral_rank5_is_empty() {
    let dir = TempDir::new().unwrap();
    let o = modata(&[
        "classify",
        "--mode",
        "integral",
        "--rank",
        "5",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("unconditional: impossible"), "{text}");
    assert!(text.contains("10000"), "{text}");
}

#[test]
fn max_degree_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_modata"))
        .args([
            "classify",
            "--mode",
            "integral",
            "--rank",
            "4",
            "--out",
            s(dir.path()),
        ])
        .env("MODATA_MAX_DEGREE", "123")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("123"), "{}", stdout(&o));
}

#[test]
fn catalog_lists_negative_controls() {
    let o = modata(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("rank5-P3"));
    assert!(text.contains("expected to fail allen_integrality"));
}

#[test]
fn fourier_outside_the_field_uses_rowscale() {
    let dir = TempDir::new().unwrap();
    let z3 = "rank 3 disc -3 role eigen\n1 1 1\n1 -1/2+1/2*r -1/2-1/2*r\n1 -1/2-1/2*r -1/2+1/2*r\n";
    let f = write(dir.path(), "z3.txt", z3);
    let o = modata(&["convert", s(&f), "--to", "fourier"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rowscale: 3 3 3"), "{}", stdout(&o));
    let g = write(dir.path(), "z3f.txt", &stdout(&o));
    let back = modata(&["convert", s(&g), "--to", "eigen"]);
    assert_eq!(
        parse_table::<Integer>(&stdout(&back)).unwrap(),
        parse_table::<Integer>(z3).unwrap()
    );
}
