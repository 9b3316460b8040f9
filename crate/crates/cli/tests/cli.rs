use std::path::Path;
use std::process::{Command, Output};

use nutaut::codec::{to_graph6, to_sparse6};
use nutaut::graph::Graph;

fn nutaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutaut")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// Two K5 joined by a 4-cycle: nut, order 10, 288 automorphisms.
fn two_k5() -> Graph {
    let mut e = Vec::new();
    for base in [0, 5] {
        for u in 0..5 {
            for v in u + 1..5 {
                e.push((base + u, base + v));
            }
        }
    }
    e.extend([(0, 5), (5, 1), (1, 6), (6, 0)]);
    Graph::new(10, &e).unwrap()
}

#[test]
fn verify_nut_graph() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.g6", &format!("{}\n", to_graph6(&two_k5())));
    let o = nutaut(&["verify", "--in", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(value(&out, "nullity"), "1");
    assert_eq!(value(&out, "full"), "true");
    assert_eq!(value(&out, "aut_order"), "288");
}

#[test]
fn verify_fails_on_non_nut_and_reads_other_formats() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.s6", &format!("{}\n", to_sparse6(&Graph::cycle(4))));
    let o = nutaut(&["verify", "--in", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "nullity"), "2");
    let f = write(dir.path(), "p3.txt", "3\n0 1\n1 2\n");
    let o = nutaut(&["verify", "--in", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "failure"), "zero-entry@1");
}

#[test]
fn group_order_of_printed_generators() {
    let o = nutaut(&["group-order", "--gens", "(1,2,3)(4,5)(6,7,8);(1,8)(2,7)(3,6)(4,9)(5,10);(7,8)", "--degree", "10"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "order"), "288");
}

#[test]
fn construct_thm1_report_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "k5.g6", &format!("{}\n", to_graph6(&Graph::complete(5))));
    let rep = dir.path().join("r.txt");
    let o = nutaut(&["construct-thm1", "--H", &h, "--sigma", "0", "--out", rep.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&rep).unwrap();
    assert_eq!(value(&text, "order_formula.actual"), "95");
    assert_eq!(value(&text, "certified"), "true");

    let o = nutaut(&["verify", "--report", rep.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "report.verified"), "true");

    // the embedded graph re-certifies with the same verdicts
    let g = write(dir.path(), "g.g6", &format!("{}\n", value(&text, "G")));
    let o = nutaut(&["verify", "--in", &g]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "nullity"), value(&text, "nut_certificate.nullity"));
    assert_eq!(value(&out, "kernel_vector"), value(&text, "nut_certificate.kernel_vector"));
    assert_eq!(value(&out, "aut_order"), value(&text, "aut_order"));

    let bad = write(dir.path(), "bad.txt", &text.replace("sigma: 0", "sigma: 2"));
    let o = nutaut(&["verify", "--report", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "report.verified"), "false");
}

#[test]
fn construct_thm2_and_wrong_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "k5.g6", &format!("{}\n", to_graph6(&Graph::complete(5))));
    let o = nutaut(&["construct-thm2", "--H", &h, "--degree", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(value(&out, "order_formula.actual"), "265");
    assert_eq!(value(&out, "regular_degree"), "8");
    assert_eq!(value(&out, "aut_order"), "120");

    let o = nutaut(&["construct-thm2", "--H", &h, "--degree", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--degree"));
    let o = nutaut(&["construct-thm1", "--H", &h, "--gens", "(1,2,9)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--gens"));
    let c5 = write(dir.path(), "c5.g6", &format!("{}\n", to_graph6(&Graph::cycle(5))));
    let o = nutaut(&["construct-thm1", "--H", &c5]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--H"));
}

#[test]
fn user_group_is_checked_abstractly() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "k5.g6", &format!("{}\n", to_graph6(&Graph::complete(5))));
    // S5 by other generators: still isomorphic
    let o = nutaut(&["construct-thm1", "--H", &h, "--gens", "(1,2,3,4,5);(1,2)"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "iso_verdict"), "isomorphic");
    // A5 has the wrong order
    let o = nutaut(&["construct-thm1", "--H", &h, "--gens", "(1,2,3,4,5);(1,2,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "iso_verdict"), "not-isomorphic");
}

#[test]
fn multiplier_command() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "c4.g6", &format!("{}\n", to_graph6(&Graph::cycle(4))));
    let o = nutaut(&["multiplier", "--H", &h]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "order"), "12");
    assert_eq!(value(&out, "aut_order"), "128");
    assert_eq!(value(&out, "aut_law"), "true");
}

#[test]
fn census_output_ignores_jobs() {
    let a = nutaut(&["--jobs", "1", "census", "--n", "8", "--filter", "nut", "--witnesses"]);
    let b = nutaut(&["--jobs", "3", "census", "--n", "8", "--filter", "nut", "--witnesses"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(value(&stdout(&a), "count"), "13");
    let o = nutaut(&["census", "--n", "11", "--filter", "connected"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--n"));
    let o = nutaut(&["census", "--n", "5", "--filter", "weird"]);
    assert!(stderr(&o).contains("--filter"));
}

#[test]
fn minimal_reports_open_and_found() {
    let o = nutaut(&["minimal", "--gens", "(1,2);(3,4)", "--degree", "4", "--predicate", "nut", "--max-n", "7"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "min_order"), "7");
    let o = nutaut(&["minimal", "--gens", "(1,2,3,4,5)", "--degree", "5", "--predicate", "nut", "--max-n", "7"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "min_order"), "open");
}

#[test]
fn gadget_search_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = nutaut(&["search-gadgets", "--kind", "proto", "--degree", "8", "--seed", "3", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("thm2-d8.g6lib")).unwrap();
    assert_eq!(read(&a), read(&b));
    let o = nutaut(&["search-gadgets", "--kind", "q0", "--out", a.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "found"), "5");
    let h = write(a.path(), "k5.g6", &format!("{}\n", to_graph6(&Graph::complete(5))));
    let o = nutaut(&["construct-thm2", "--H", &h, "--degree", "8", "--gadget-lib", a.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = nutaut(&["search-gadgets", "--kind", "proto", "--degree", "8", "--out", a.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--seed"));
}

#[test]
fn aut_command_lists_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p3.g6", &format!("{}\n", to_graph6(&Graph::path(3))));
    let o = nutaut(&["aut", "--in", &f]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "aut_order"), "2");
    assert_eq!(value(&out, "orbits"), "1,3 2");
}
