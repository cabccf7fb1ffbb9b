use std::path::PathBuf;
use std::process::{Command, Output};

use nv_core::{parse_element, Element};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eq_on_same_file() {
    let a = fixture("a.nv");
    let out = nv(&["eq", &a, &a]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "equal\n");
    let out = nv(&["eq", &a, &fixture("swap.nv")]);
    assert_eq!(stdout(&out), "not equal\n");
}

#[test]
fn order_of_swap() {
    let out = nv(&["order", &fixture("swap.nv"), "--max", "10"]);
    assert_eq!(stdout(&out), "order 2\n");
    let out = nv(&["order", &fixture("a.nv"), "--max", "6"]);
    assert!(stdout(&out).starts_with("order unknown"));
}

#[test]
fn closure_of_s3() {
    let out = nv(&["closure", &fixture("t01.nv"), &fixture("t12.nv"), "--budget", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "finite group of order 6\n");
    let out = nv(&["closure", &fixture("t01.nv"), &fixture("t12.nv"), "--budget", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn exit_codes() {
    assert_eq!(nv(&["validate", &fixture("a.nv")]).status.code(), Some(0));
    let bad = nv(&["validate", &fixture("bad_map.nv")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 7: non-bijective map"));
    let overlap = nv(&["validate", &fixture("overlap.nv")]);
    assert_eq!(overlap.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&overlap.stderr).contains("overlap"));
    assert_eq!(nv(&["validate", "no/such/file.nv"]).status.code(), Some(2));
    assert_eq!(nv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nv(&["eval", &fixture("a.nv"), "--point", "01:"]).status.code(), Some(2));
    assert_eq!(nv(&["eval", &fixture("a.nv"), "--point", "0:1"]).status.code(), Some(1));
    assert_eq!(nv(&["mul", &fixture("a.nv"), &fixture("bad_map.nv")]).status.code(), Some(2));
    assert_eq!(nv(&["rand", "--gen", "(1 5)"]).status.code(), Some(2));
}

#[test]
fn mul_inv_pow_agree_with_library() {
    let a_path = fixture("a.nv");
    let a = parse_element(&std::fs::read_to_string(&a_path).unwrap()).unwrap();
    let sq = parse_element(&stdout(&nv(&["pow", &a_path, "2"]))).unwrap();
    assert!(sq.equals(&a.compose(&a).unwrap()).unwrap());
    let prod = parse_element(&stdout(&nv(&["mul", &a_path, &a_path, &a_path]))).unwrap();
    assert!(prod.equals(&a.power(3, true)).unwrap());
    let inv = parse_element(&stdout(&nv(&["inv", &a_path]))).unwrap();
    assert!(inv.compose(&a).unwrap().is_identity());
    let unreduced = parse_element(&stdout(&nv(&["pow", &a_path, "2", "--no-reduce"]))).unwrap();
    assert_eq!(unreduced.len(), 4);
    let flip = fixture("flip.nv");
    let id = parse_element(&stdout(&nv(&["mul", &flip, &flip]))).unwrap();
    assert_eq!(id, Element::identity(2));
}

#[test]
fn profile_csv() {
    let out = stdout(&nv(&["profile", &fixture("a.nv"), "--powers", "3"]));
    assert_eq!(
        out,
        "i,Tp,Tp_red,Cp,Dp,I,R,m,m_red\n1,2,2,1,1,0,0,3,3\n2,3,3,1,2,1,0,4,4\n3,4,4,1,3,2,0,5,5\n"
    );
}

#[test]
fn eval_point() {
    let out = stdout(&nv(&["eval", &fixture("a.nv"), "--point", "01:1,e:10"]));
    assert_eq!(out, "00:1,e:10\n");
    let out = stdout(&nv(&["eval", &fixture("flip.nv"), "--point", "01:1,e:10"]));
    // 01:1 is stored canonically as 0:1
    assert_eq!(out, "e:10,0:1\n");
}

#[test]
fn certify_and_bs() {
    let out = stdout(&nv(&["certify-torsion", &fixture("swap.nv"), "--max", "4"]));
    assert!(out.starts_with("certified torsion\npower 1\norder divides 2\n"));
    let out = stdout(&nv(&["certify-torsion", &fixture("a.nv"), "--max", "8"]));
    assert_eq!(out, "no certificate up to power 8\n");
    let out = stdout(&nv(&["bs-check", &fixture("a.nv"), &fixture("a.nv"), "1", "2"]));
    assert_eq!(out, "relation fails\n");
}

#[test]
fn roots_of_a_square() {
    let dir = std::env::temp_dir().join(format!("nv-roots-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // x0 on the unit interval, then squared
    let x0 = "nv 1\nblocks 3\nD 0 : 0\nD 1 : 10\nD 2 : 11\nR 0 : 00\nR 1 : 01\nR 2 : 1\nmap 0->0 ; 1->1 ; 2->2\n";
    let path = dir.join("x0.nv");
    std::fs::write(&path, x0).unwrap();
    let sq = dir.join("x0sq.nv");
    let p = path.to_string_lossy().into_owned();
    let s = sq.to_string_lossy().into_owned();
    assert_eq!(nv(&["pow", &p, "2", "-o", &s]).status.code(), Some(0));
    let out = stdout(&nv(&["roots", &s, "--blocks", "3", "--max", "8"]));
    assert!(out.starts_with("1 roots\n# t = 2\n"));
    assert!(out.ends_with(x0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn render_and_rand() {
    let svg = stdout(&nv(&["render", &fixture("a.nv")]));
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches(r#"class="block""#).count(), 6);
    let r = stdout(&nv(&["rand", "--seed", "9", "--arity", "3", "--depth", "2", "--gen", "(1 2 3)"]));
    let e = parse_element(&r).unwrap();
    assert_eq!(e.arity(), 3);
    let path = std::env::temp_dir().join(format!("nv-rand-{}.nv", std::process::id()));
    std::fs::write(&path, &r).unwrap();
    let listing = stdout(&nv(&["render", &path.to_string_lossy()]));
    assert!(listing.starts_with("domain\n"));
    assert_eq!(listing.lines().count(), 2 + 2 * e.len());
    std::fs::remove_file(&path).unwrap();
}
