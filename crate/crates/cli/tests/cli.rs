use std::path::PathBuf;
use std::process::Command as Process;

use jetforge_cli::{run_with_env, Outcome, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_env(args, None)
}

fn run_env(args: &[&str], env: Option<&str>) -> Outcome {
    let mut argv = vec!["jetforge".to_string()];
    for a in args {
        argv.push(if a.ends_with(".sys") { corpus(a) } else { a.to_string() });
    }
    run_with_env(argv, env)
}

fn body(o: &Outcome) -> Vec<&str> {
    o.stdout.lines().filter(|l| !l.starts_with('#')).collect()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(corpus(&format!("golden/{name}"))).unwrap()
}

#[test]
fn prolong_matches_golden_report() {
    let o = run(&["prolong", "--level", "2", "ex28.sys"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, golden("ex28-prolong-2.txt"));
    assert!(o.stderr.is_empty());
}

#[test]
fn nodal_components_report() {
    let o = run(&["components", "--level", "1", "--hint", "x,y", "nodal.sys"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, golden("nodal-components-1.txt"));
    let b = body(&o);
    assert!(b.contains(&"components: 2"));
    assert_eq!(b.iter().filter(|l| l.starts_with("component ") && l.contains("dimension 2,")).count(), 2);
    let declared = run(&["components", "--level", "1", "--hint", "node", "nodal.sys"]);
    assert_eq!(body(&declared), b);
}

#[test]
fn fiber_dimension_over_origin() {
    let o = run(&["dim", "--level", "2", "--fiber", "origin", "ex28.sys"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(body(&o).last(), Some(&"dimension: 5"));
    let o = run(&["dim", "--level", "2", "ex28.sys"]);
    assert_eq!(body(&o).last(), Some(&"dimension: 6"));
    let o = run(&["fiber", "--level", "1", "--point", "smooth", "nodal.sys"]);
    assert_eq!(body(&o).last(), Some(&"dimension: 1"));
}

#[test]
fn header_pins_version_command_and_digest() {
    let o = run(&["prolong", "--level", "0", "line.sys"]);
    let head: Vec<&str> = o.stdout.lines().take(3).collect();
    assert_eq!(head[0], format!("# jetforge {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(head[1], "# command: prolong --level 0 line.sys");
    let digest = head[2].strip_prefix("# input: line.sys sha256:").unwrap();
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
}

#[test]
fn reports_are_deterministic() {
    let cases: &[&[&str]] = &[
        &["prolong", "--level", "3", "twisted.sys"],
        &["components", "--level", "2", "--hint", "vertex", "ex28.sys"],
        &["singular", "--level", "1", "nodal.sys"],
        &["forced", "--level", "1", "--arc", "axis", "--depth", "3", "umbrella.sys"],
        &["oracle", "--level", "2", "--trials", "20", "--seed", "7", "f5cone.sys"],
        &["arc-kernel", "--arc", "param", "cusp.sys"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.code, EXIT_OK, "{args:?}: {}", a.stderr);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["prolong", "--level", "1", "bad/syntax.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("syntax.sys:4:7:"), "{}", o.stderr);
    let o = run(&["prolong", "--level", "1", "bad/modulus.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("modulus.sys:1:10:"), "{}", o.stderr);
    let o = run(&["prolong", "--level", "1", "bad/unknown.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("unknown.sys:4:5:"), "{}", o.stderr);
    let o = run(&["prolong", "--level", "1", "bad/juxtaposed.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("juxtaposed.sys:4:2:"), "{}", o.stderr);
    let o = run(&["arc-kernel", "--arc", "generic", "--max-pairs", "10", "line.sys"]);
    assert_eq!(o.code, EXIT_USAGE);
    let o = run(&["escape", "--level", "1", "--hint", "x - 1", "--point", "origin", "nodal.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN, "{}", o.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["prolong", "ex28.sys"][..],
        &["frobnicate", "ex28.sys"],
        &["prolong", "--level", "1", "missing.sys"],
        &["fiber", "--level", "1", "--point", "nowhere", "ex28.sys"],
        &["thin", "--level", "1", "--hint", "x", "ex28.sys"],
        &["thin", "--level", "1", "--hint", "x +", "--point", "origin", "ex28.sys"],
    ] {
        let o = run(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}: {}", o.stdout);
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("arc-kernel"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = run(&["components", "--level", "2", "--max-pairs", "0", "ex28.sys"]);
    assert_eq!(o.code, EXIT_BUDGET);
    assert!(o.stderr.starts_with("budget exhausted"));
    assert!(o.stdout.starts_with("# jetforge"));
    let o = run(&["dim", "--level", "2", "--max-basis", "1", "ex28.sys"]);
    assert_eq!(o.code, EXIT_BUDGET);
}

#[test]
fn environment_budget_and_flag_precedence() {
    let args = ["dim", "--level", "2", "ex28.sys"];
    assert_eq!(run_env(&args, Some("max-pairs=0")).code, EXIT_BUDGET);
    let mut flagged = args.to_vec();
    flagged.extend(["--max-pairs", "10000"]);
    assert_eq!(run_env(&flagged, Some("max-pairs=0")).code, EXIT_OK);
    assert_eq!(run_env(&args, Some("pairs")).code, EXIT_USAGE);
    let o = run_env(&["forced", "--level", "1", "--arc", "axis", "umbrella.sys"], Some("depth=2"));
    assert!(body(&o).contains(&"depth: 2"));
    assert!(body(&o).contains(&"forced to zero: none"));
}

#[test]
fn geometry_commands() {
    let o = run(&["arc-kernel", "--arc", "identity", "line.sys"]);
    assert_eq!(body(&o).last(), Some(&"verdict: fat"));
    let o = run(&["arc-kernel", "--arc", "generic", "plane.sys"]);
    assert_eq!(body(&o)[1..], ["kernel basis: 1 polynomials", "  x^2 - y", "verdict: thin"]);
    let o = run(&["escape", "--level", "1", "--hint", "parabola", "--point", "origin", "plane.sys"]);
    assert!(body(&o).contains(&"witness: generator 1 (-x^2 + y), t^2 coefficient y(2)"), "{}", o.stdout);
    assert!(o.stdout.contains("finite-level evidence only"));
    let o = run(&["thin", "--level", "1", "--hint", "handle", "--arc", "axis", "umbrella.sys"]);
    assert!(body(&o).contains(&"prefix inside subvariety: yes"));
    let o = run(&["thin", "--level", "1", "--hint", "x", "--arc", "axis", "umbrella.sys"]);
    assert!(body(&o).contains(&"prefix inside subvariety: no"));
    let o = run(&["forced", "--level", "1", "--arc", "axis", "umbrella.sys"]);
    assert!(body(&o).contains(&"forced to zero: y(2) (power 4), z(2) (power 2)"), "{}", o.stdout);
    let o = run(&["singular", "--level", "0", "parabola.sys"]);
    assert!(body(&o).contains(&"singular locus: empty"));
    let o = run(&["map", "--level", "1", "--target", &corpus("parabola.sys"), "--images", "x, x^2", "line.sys"]);
    assert_eq!(body(&o).last(), Some(&"v(1) -> 2*x*x(1)"));
    let o = run(&["map", "--level", "1", "--target", &corpus("parabola.sys"), "--images", "x, x", "line.sys"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    let o = run(&["product", "--with", &corpus("cusp.sys"), "--level", "2", "nodal.sys"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(body(&o).last(), Some(&"equals union of factor jet generators: yes"));
    let o = run(&["truncate", "--from", "4", "--to", "2", "umbrella.sys"]);
    assert_eq!(body(&o).last(), Some(&"matches direct prolongation at level 2: yes"));
    let o = run(&["oracle", "--level", "3", "halves.sys"]);
    assert!(body(&o).contains(&"mismatches: 0"));
}

#[test]
fn binary_streams_and_exit_code() {
    let bin = env!("CARGO_BIN_EXE_jetforge");
    let ok = Process::new(bin).args(["prolong", "--level", "2", &corpus("ex28.sys")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), golden("ex28-prolong-2.txt"));
    let bad = Process::new(bin)
        .args(["dim", "--level", "2", &corpus("ex28.sys")])
        .env("JETFORGE_BUDGET", "max-pairs=0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_BUDGET));
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("budget exhausted"));
}
