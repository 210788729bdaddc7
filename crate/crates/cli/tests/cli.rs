use std::fs;
use std::process::{Command, Output};

use num_rational::BigRational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infsubst")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value_of<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("no line {key} in\n{text}"))
}

#[test]
fn spectral_all_ones() {
    let o = run(&["spectral", "--tail", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("λ = 5/2"), "{s}");
    assert!(s.contains("density = 3/4"), "{s}");
}

#[test]
fn spectral_normalises_prefix() {
    let a = stdout(&run(&["spectral", "--prefix", "1,9", "--tail", "9"]));
    let b = stdout(&run(&["spectral", "--prefix", "1", "--tail", "9"]));
    assert_eq!(a, b);
    assert!(a.starts_with("sequence = (1,9,9,...)"));
}

#[test]
fn exact_rationals_round_trip() {
    let s = stdout(&run(&["spectral", "--prefix", "1", "--tail", "9"]));
    let lambda: BigRational = value_of(&s, "λ").parse().unwrap();
    assert_eq!(lambda, BigRational::new(17.into(), 4.into()));
    let density: BigRational = value_of(&s, "density").parse().unwrap();
    assert_eq!(density, BigRational::new(5.into(), 8.into()));
    let mu: BigRational = value_of(&s, "μ").parse().unwrap();
    assert_eq!(mu.to_string(), value_of(&s, "μ"));
}

#[test]
fn twist_worked_example() {
    let o = run(&["twist", "--prefix", "1,1,3", "--tail", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("R = x\n"), "{s}");
    assert!(s.contains("g = x + 2"), "{s}");
}

#[test]
fn catalan_check_passes() {
    let o = run(&["catalan-check", "--tail", "1", "--n", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("PASS").count(), 2, "{s}");
    assert!(!s.contains("FAIL"));
}

#[test]
fn count_table() {
    let s = stdout(&run(&["count", "--tail", "1", "--n", "4"]));
    let rows: Vec<&str> = s.lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit())).collect();
    assert_eq!(rows, vec!["0,1", "1,2", "2,5", "3,12", "4,30"]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["spectral"]).status.code(), Some(1));
    assert_eq!(run(&["spectral", "--tail", "0"]).status.code(), Some(1));
    assert_eq!(run(&["spectral", "--prefix", "0", "--tail", "1"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--tail", "1", "--digits", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn computation_errors_exit_two() {
    let o = run(&["discrepancy", "--tail", "1", "--n", "2000", "--bits", "64"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("precision insufficient"));
    let o = run(&["asymptotics", "--tail", "1", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("insufficient window"));
}

#[test]
fn asymptotics_all_ones() {
    let o = run(&["asymptotics", "--tail", "1", "--n", "400"]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert!(stdout(&o).contains("leading coefficient"));
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"prefix": [1], "tail": 9, "n_max": 3}"#).unwrap();
    let a = stdout(&run(&["count", "--config", cfg.to_str().unwrap()]));
    assert!(a.contains("3,44"), "{a}");
    let b = stdout(&run(&["count", "--config", cfg.to_str().unwrap(), "--tail", "1"]));
    assert!(b.contains("3,12"), "{b}");
    fs::write(&cfg, r#"{"tail": 1, "colour": 3}"#).unwrap();
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&cfg, "{").unwrap();
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let printed = stdout(&run(&["discrepancy", "--tail", "1", "--n", "20"]));
    let o = run(&["discrepancy", "--tail", "1", "--n", "20", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn figures_are_deterministic() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let o = run(&["figures", "--digits", "12", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{o:?}");
    }
    let mut names: Vec<String> =
        fs::read_dir(d1.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for n in &names {
        let a = fs::read(d1.path().join(n)).unwrap();
        let b = fs::read(d2.path().join(n)).unwrap();
        assert_eq!(a, b, "{n}");
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("n,value\n"));
        assert!(!text.contains('\r'));
    }
}
