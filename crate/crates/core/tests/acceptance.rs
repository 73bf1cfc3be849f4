//! One line per acceptance criterion. Exits non-zero if any fails.
//!
//! All comparisons are exact; the only tolerances are wall-clock bounds.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use g2flop::bundles::{cohomology_f, weights, BundleExpr};
use g2flop::checks::{self, Status, Suite};
use g2flop::rootdata::{RootSystem, Weight};
use g2flop::sod::{replay, CertKind, ReplayOptions};
use g2flop::weylbott::{dot_normalize, filtration_euler_characteristic, line_cohomology, BottOutcome};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const VANISHING_BUDGET: Duration = Duration::from_secs(1);
const REPLAY_BUDGET: Duration = Duration::from_secs(5);
const HILBERT_BUDGET: Duration = Duration::from_secs(5);
const HILBERT_BOUND: u64 = 8;
const PROPERTY_CASES: u32 = 1000;

type Criterion = (&'static str, fn(&RootSystem) -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_suite(suite: &Suite, elapsed: Option<(Duration, Duration)>) -> Outcome {
    let fails: Vec<&str> = suite
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    let mut detail = format!(
        "{} checks, {} failed, {} indeterminate",
        suite.checks.len(),
        fails.len(),
        suite.count(Status::Indeterminate)
    );
    let mut pass = fails.is_empty();
    if let Some((took, budget)) = elapsed {
        detail.push_str(&format!(", {took:.2?} (limit {budget:?})"));
        pass &= took < budget;
    }
    if !fails.is_empty() {
        detail.push_str(&format!("; failing: {}", fails.join("; ")));
    }
    Outcome { pass, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn vanishing_suite(rs: &RootSystem) -> Outcome {
    let (suite, took) = timed(|| checks::line_bundles(rs).unwrap());
    from_suite(&suite, Some((took, VANISHING_BUDGET)))
}

fn ext_suite(rs: &RootSystem) -> Outcome {
    from_suite(&checks::ext_on_v(rs).unwrap(), None)
}

fn replay_suite(rs: &RootSystem) -> Outcome {
    let (suite, took) = timed(|| checks::mutations(rs).unwrap());
    let mut out = from_suite(&suite, Some((took, REPLAY_BUDGET)));
    let report = replay(rs, &ReplayOptions::default());
    let seqs = report.certificates().filter(|c| c.kind == CertKind::ExactSeq).count();
    let balances = report.certificates().filter(|c| c.kind == CertKind::KClassBalance).count();
    out.detail.push_str(&format!(
        "; {} certificates ({seqs} exact sequences, {balances} class balances)",
        report.certificates().count()
    ));
    out.pass &= seqs == 3 && balances == 3;
    out
}

fn collections_suite(rs: &RootSystem) -> Outcome {
    let suite = checks::collections(rs).unwrap();
    let mut out = from_suite(&suite, None);
    // only End(S) may stay undetermined
    let undetermined: Vec<&str> = suite
        .checks
        .iter()
        .filter(|c| c.status == Status::Indeterminate)
        .map(|c| c.name.as_str())
        .collect();
    out.pass &= undetermined.iter().all(|n| n.contains("hom_V(S, S)"));
    if !undetermined.is_empty() {
        out.detail.push_str(&format!("; reported: {}", undetermined.join("; ")));
    }
    out
}

fn dims_suite(rs: &RootSystem) -> Outcome {
    from_suite(&checks::root_data(rs).unwrap(), None)
}

fn hilbert_suite(rs: &RootSystem) -> Outcome {
    let (suite, took) = timed(|| checks::hilbert(rs, HILBERT_BOUND).unwrap());
    let mut out = from_suite(&suite, Some((took, HILBERT_BUDGET)));
    out.pass &= suite.checks.len() >= 300;
    out
}

fn cy_suite(rs: &RootSystem) -> Outcome {
    from_suite(&checks::canonical(rs).unwrap(), None)
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn profile_key(p: &g2flop::weylbott::CohomologyProfile, flip: bool) -> Vec<(usize, Weight, u64)> {
    let mut v: Vec<_> = p
        .entries()
        .iter()
        .map(|e| (if flip { 6 - e.degree } else { e.degree }, e.weight.clone(), e.mult))
        .collect();
    v.sort();
    v
}

fn property_suite(rs: &RootSystem) -> Outcome {
    let weight = || (-6i64..=6, -6i64..=6).prop_map(|(a, b)| Weight::g2(a, b));
    let mut results: Vec<(&str, Result<(), String>)> = Vec::new();

    results.push((
        "serre duality",
        runner().run(&weight(), |l| {
            let a = line_cohomology(rs, &l).unwrap();
            let b = line_cohomology(rs, &(&Weight::g2(-2, -2) - &l)).unwrap();
            prop_assert_eq!(profile_key(&a, true), profile_key(&b, false));
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    results.push((
        "weyl-orbit regularity",
        runner().run(&(weight(), 0usize..12), |(l, i)| {
            let w = &rs.weyl_group[i];
            let moved = &w.apply(&(&l + &rs.rho)) - &rs.rho;
            let a = matches!(dot_normalize(rs, &l).unwrap(), BottOutcome::Regular { .. });
            let b = matches!(dot_normalize(rs, &moved).unwrap(), BottOutcome::Regular { .. });
            prop_assert_eq!(a, b);
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let p1 = prop_oneof![
        (-3i64..=3, 0i64..=3).prop_map(|(a, b)| BundleExpr::IrrP1(a, b)),
        (0u32..=4, -3i64..=3).prop_map(|(m, a)| BundleExpr::IrrP1(1, 1).sym(m).twist(a, 0)),
        (-3i64..=3, -3i64..=3).prop_map(|(a, b)| BundleExpr::u().tensor(BundleExpr::IrrP1(a, b.abs()))),
        (-3i64..=3).prop_map(|a| BundleExpr::u().dual().tensor(BundleExpr::u()).twist(a, 0)),
    ];
    results.push((
        "route A = route B",
        runner().run(&p1, |e| {
            let c = cohomology_f(rs, &e).unwrap();
            let b = &c.levi.as_ref().unwrap().profile;
            if let Some(a) = c.filtration.determined() {
                prop_assert_eq!(a, b);
            }
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    results.push((
        "euler additivity",
        runner().run(&(-8i64..=8, -8i64..=8), |(a, b)| {
            let chi = |e: BundleExpr| filtration_euler_characteristic(rs, weights(rs, &e.twist(a, b)).unwrap().weights()).unwrap();
            let u = BundleExpr::u();
            let ud_mh = || u.clone().dual().twist(0, -1);
            prop_assert_eq!(chi(BundleExpr::s()), chi(u.clone()) + chi(ud_mh()));
            prop_assert_eq!(chi(ud_mh()), chi(BundleExpr::line(1, -2)) + chi(BundleExpr::line(0, 0)));
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let fails: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    Outcome {
        pass: fails.is_empty(),
        detail: if fails.is_empty() {
            format!("{} properties x {PROPERTY_CASES} cases", results.len())
        } else {
            fails.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let rs = RootSystem::g2();
    let criteria: [Criterion; 8] = [
        ("line-bundle vanishing on F", vanishing_suite),
        ("ext groups on V", ext_suite),
        ("mutation replay and controls", replay_suite),
        ("exceptional collections", collections_suite),
        ("representation dimensions", dims_suite),
        ("hilbert identities", hilbert_suite),
        ("canonical classes", cy_suite),
        ("randomized properties", property_suite),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run(&rs);
        all &= out.pass;
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
