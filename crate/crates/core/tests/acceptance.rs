//! Acceptance criteria 1–9 of the specification, at full scale, with their
//! runtime budgets.

use std::time::{Duration, Instant};

use wplimit::cli::selftest::{
    check_chains, check_condition_equivalence, check_invariant_grid, check_lemma1,
    check_membership, check_riemann_roch, check_theorem3, check_theorem4, CheckResult,
};
use wplimit::cli::{run, Command, Overrides, Problem, ProblemSpec};

const SEED: u64 = 20260;

fn timed(budget_secs: u64, f: impl FnOnce() -> CheckResult) -> CheckResult {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    assert!(r.passed(), "{} failed: {:#?}", r.name, r.failures);
    assert!(
        took < Duration::from_secs(budget_secs),
        "{} took {took:?}, budget {budget_secs} s",
        r.name
    );
    eprintln!("{}: {} cases in {took:?}", r.name, r.cases);
    r
}

#[test]
fn criterion1_invariant_grid() {
    let r = timed(1, check_invariant_grid);
    assert!(r.cases > 200, "only {} profiles", r.cases);
}

#[test]
fn criterion2_riemann_roch_oracle() {
    let r = timed(60, || check_riemann_roch(SEED, 200));
    assert_eq!(r.cases, 200);
}

#[test]
fn criterion3_lemma1() {
    let r = timed(120, || check_lemma1(SEED, 50));
    assert_eq!(r.cases, 50);
}

#[test]
fn criterion4_condition_equivalence() {
    let r = timed(300, || check_condition_equivalence(SEED, 50));
    assert_eq!(r.cases, 50);
    assert!(r.condition_failures > 0, "no engineered instance failed (3.i)");
    eprintln!("instances failing (3.i): {}", r.condition_failures);
}

#[test]
fn criterion4_engineered_failure_is_detected() {
    let text = include_str!("../../../data/conjugate-pair.json");
    let problem = Problem::new(ProblemSpec::from_json_str(text).unwrap(), &Overrides::default()).unwrap();
    let rep = run(Command::Conditions, &problem).unwrap();
    assert_eq!(rep.exit_code, 2);
    let c = &rep.result["conditions"][0];
    assert_eq!(c["i"], 1);
    assert_eq!(c["condition1"]["holds"], false);
    assert_eq!(c["condition1"]["witness"]["n"], 1);
    assert_eq!(c["condition3"]["holds"], false);
    assert_eq!(c["condition3_via_plucker"], false);
}

#[test]
fn criteria5_and_9_theorem4_and_gap_oracle() {
    timed(600, || check_theorem4(SEED, &[(0, 0, 3), (2, 3, 2), (2, 2, 2), (1, 2, 2)]));
}

#[test]
fn criterion6_theorem3_dimensions() {
    timed(10, || check_theorem3(SEED));
}

#[test]
fn criterion7_membership_round_trip() {
    let r = timed(120, || check_membership(SEED, 30));
    assert_eq!(r.cases, 30 + 10);
}

#[test]
fn criterion8_chain_bookkeeping() {
    timed(5, check_chains);
}
