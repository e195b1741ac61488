use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn job(toml: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(toml.as_bytes()).unwrap();
    f
}

fn rootstack(args: &[&str], config: &tempfile::NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootstack"))
        .args(args)
        .arg("--config")
        .arg(config.path())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HALF_BOUNDARY: &str = r#"
mode = "vanishing"
[pair]
n = 2
boundary = [0, 1, 2]
root_orders = [2, 2, 2]
[divisor]
D0 = "1/2"
D1 = "1/2"
D2 = "1/2"
"#;

#[test]
fn vanishing_half_boundary_on_p2() {
    let cfg = job(HALF_BOUNDARY);
    let out = rootstack(&["vanishing", "--oracle"], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let coarse: Vec<Vec<&str>> = text
        .split("# table\tstack")
        .next()
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("i\t"))
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(coarse.len(), 9);
    for row in &coarse {
        let (i, j): (usize, usize) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        if i + j < 2 {
            assert_eq!((row[3], row[4]), ("0", "PASS"));
        } else {
            assert_eq!(row[4], "-");
        }
    }
    assert!(text.ends_with("# result\tPASS\n"));
}

#[test]
fn structured_vanishing_mirrors_report() {
    let cfg = job(HALF_BOUNDARY);
    let out = rootstack(&["vanishing", "--format", "structured"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["twist"], -3);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 3);
    assert_eq!(v["coarse"].as_array().unwrap().len(), 9);
    assert_eq!(v["stack"]["root_order"], 2);
    assert_eq!(v["round_up"]["D1"], 1);
}

#[test]
fn pushforward_with_unequal_orders_uses_local_model() {
    let cfg = job("mode = \"pushforward\"\n[pair]\nn = 2\nboundary = [0, 1]\nroot_orders = [2, 3]\n[pushforward]\na = [3, 4]\n");
    let out = rootstack(&["pushforward", "--oracle", "--format", "structured"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coarse: Vec<u64> = v["local"].as_array().unwrap().iter().map(|e| e["coarse_coefficient"].as_u64().unwrap()).collect();
    assert_eq!(coarse, vec![2, 2]);
    assert_eq!(v["local"][1]["oracle"], 2);
    assert!(v["global"].is_null());
}

#[test]
fn pushforward_with_equal_orders_compares_tables() {
    let cfg = job("[pair]\nn = 2\nboundary = [2, 0]\nroot_orders = [3, 3]\n[pushforward]\na = [2, 1]\nintegral_part = [0, 1, 0]\n");
    let out = rootstack(&["pushforward"], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("# table\tcoarse\n") && text.contains("# table\tstack\n"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn malformed_rational_is_a_parse_error() {
    let cfg = job("[pair]\nn = 1\nboundary = [0]\n[divisor]\nD0 = \"1/0\"\n");
    assert_eq!(rootstack(&["vanishing"], &cfg).status.code(), Some(2));
    let cfg = job("[pair]\nn = 1\nboundary = [0]\n[divisor]\nD0 = 0.5\n");
    assert_eq!(rootstack(&["vanishing"], &cfg).status.code(), Some(2));
    let cfg = job("mode = \"vanishing\"\n");
    assert_eq!(rootstack(&["monoid-check"], &cfg).status.code(), Some(2));
}

#[test]
fn precondition_violations() {
    let not_ample = job("[pair]\nn = 2\nboundary = [0]\n[divisor]\nD0 = \"-1/2\"\n");
    assert_eq!(rootstack(&["vanishing"], &not_ample).status.code(), Some(3));
    let outside = job("[pair]\nn = 2\nboundary = [0]\n[divisor]\nD0 = \"1/2\"\nD1 = \"1/3\"\n");
    assert_eq!(rootstack(&["vanishing"], &outside).status.code(), Some(3));
    let divides = job("[pair]\nn = 1\nboundary = [0, 1]\nroot_orders = [2, 2]\n[pushforward]\na = [1, 4]\n");
    assert_eq!(rootstack(&["pushforward"], &divides).status.code(), Some(3));
}

#[test]
fn degenerate_log_pushforward_passes() {
    let cfg = job("[pair]\nn = 2\nboundary = [0, 1, 2]\nroot_orders = [2, 2, 2]\n[pushforward]\na = [0, 0, 0]\nforms = \"log\"\n");
    assert_eq!(rootstack(&["pushforward"], &cfg).status.code(), Some(0));
}

#[test]
fn too_small_weight_bound_is_internal() {
    let cfg = job(HALF_BOUNDARY);
    assert_eq!(rootstack(&["vanishing", "--weight-bound", "1"], &cfg).status.code(), Some(4));
}

#[test]
fn monoid_checks() {
    let simple = job("[morphism]\nrows = [[0, 2], [3, 0]]\n");
    let out = rootstack(&["monoid-check"], &simple);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0\t1\t3\n1\t0\t2\n"));

    let not_simple = job("[morphism]\nrows = [[1, 1], [0, 1]]\n");
    assert_eq!(rootstack(&["monoid-check"], &not_simple).status.code(), Some(1));

    let lift = job("[morphism]\nrows = [[2, 0], [0, 3]]\nfield = \"F_7\"\nunits = [\"2\", \"6\"]\n");
    let out = rootstack(&["monoid-check", "--oracle"], &lift);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# lift\tF_7\t3\t3\n"));

    let no_root = job("[morphism]\nrows = [[2]]\nfield = \"Q\"\nunits = [\"2\"]\n");
    assert_eq!(rootstack(&["monoid-check"], &no_root).status.code(), Some(3));
}

#[test]
fn reports_are_byte_deterministic() {
    let cfg = job(HALF_BOUNDARY);
    for format in ["tsv", "structured"] {
        let a = rootstack(&["vanishing", "--format", format], &cfg);
        let b = rootstack(&["vanishing", "--format", format], &cfg);
        assert_eq!(a.stdout, b.stdout);
    }
}
