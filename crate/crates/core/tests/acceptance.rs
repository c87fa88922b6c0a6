//! One test per acceptance criterion. Each prints a single PASS/FAIL line;
//! details follow on failure. Run with `--nocapture` to see the lines.

use virtgraph::verify::{self, CriterionResult};

fn check(id: u8) {
    let r: CriterionResult = verify::run(id);
    println!("{}", r.summary());
    for d in &r.detail {
        println!("    {d}");
    }
    assert!(r.pass, "{}", r.summary());
}

#[test]
fn c01_isolated_vertex_trichotomy() {
    check(1);
}

#[test]
fn c02_virt_diameter_bound() {
    check(2);
}

#[test]
fn c03_independence_graph() {
    check(3);
}

#[test]
fn c04_tarski_interpolation() {
    check(4);
}

#[test]
fn c05_soluble_generating_graph() {
    check(5);
}

#[test]
fn c06_criterion_equivalence() {
    check(6);
}

#[test]
fn c07_component_census() {
    check(7);
}

#[test]
fn c08_generator_pair_openness() {
    check(8);
}

#[test]
fn c09_product_paths_and_separation() {
    check(9);
}

#[test]
fn c10_engine_soundness() {
    check(10);
}
