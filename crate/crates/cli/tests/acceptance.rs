//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use blockwitness_core::arith::odd_primes_up_to;
use blockwitness_core::blocks::an_intersection;
use blockwitness_core::conjectures::{scan_conjectures, OracleTable, PairSelection, ScanKind};
use blockwitness_core::partitions::degree_sn;
use blockwitness_core::selftest;
use blockwitness_core::symbols::Family;
use num_bigint::BigUint;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn first(failures: &[String]) -> String {
    failures.first().cloned().unwrap_or_default()
}

fn orthogonality() -> Outcome {
    let bad = selftest::orthogonality(25);
    outcome(
        bad.is_empty(),
        format!("n <= 25, {} violations {}", bad.len(), first(&bad)),
    )
}

fn symmetric_witnesses() -> Outcome {
    let (count, bad) = selftest::symmetric_witness_grid(60);
    outcome(
        bad.is_empty(),
        format!("{count} instances, {} failures {}", bad.len(), first(&bad)),
    )
}

fn intersection_nontrivial() -> Outcome {
    let mut rows = 0;
    let mut trivial = Vec::new();
    for n in 8..=40 {
        let table = OracleTable::new(n);
        let two = table.members(2);
        for p in odd_primes_up_to(n as u64) {
            let members = table.members(p);
            let size = members.iter().zip(&two).filter(|(a, b)| **a && **b).count();
            rows += 1;
            if !(members[0] && two[0]) || size < 2 {
                trivial.push(format!("n={n} p={p}"));
            }
        }
    }
    outcome(
        trivial.is_empty(),
        format!(
            "{rows} (n, p) rows, {} trivial {}",
            trivial.len(),
            first(&trivial)
        ),
    )
}

fn sets_differ() -> Outcome {
    let rows = scan_conjectures(ScanKind::B, 2, 30, PairSelection::All).expect("valid range");
    let equal: Vec<String> = rows
        .iter()
        .filter(|row| row.sets_equal != Some(false))
        .map(|row| format!("n={} p={} q={}", row.n, row.p, row.q))
        .collect();
    outcome(
        equal.is_empty(),
        format!(
            "{} pairs, {} equalities {}",
            rows.len(),
            equal.len(),
            first(&equal)
        ),
    )
}

fn alternating_vector() -> Outcome {
    let an = an_intersection(8, 3, 5);
    let degrees: Vec<BigUint> = an.pairs.iter().map(|pair| degree_sn(&pair.label)).collect();
    let has = |d: u32| degrees.contains(&BigUint::from(d));
    let labels: Vec<String> = an.pairs.iter().map(|pair| pair.label.to_string()).collect();
    outcome(
        has(14) && has(64),
        format!("pairs {labels:?}, degrees {degrees:?}"),
    )
}

fn type_a() -> Outcome {
    let (count, bad) = selftest::type_a_grid(30, 50);
    outcome(
        bad.is_empty(),
        format!("{count} instances, {} mismatches {}", bad.len(), first(&bad)),
    )
}

fn bc() -> Outcome {
    let tally = selftest::symbol_family_grid(Family::TypeBC, 13, 100, 30);
    outcome(
        tally.failures.is_empty(),
        format!(
            "{} PASS, {} UNSUPPORTED, {} FAIL {}",
            tally.pass,
            tally.unsupported,
            tally.failures.len(),
            first(&tally.failures)
        ),
    )
}

fn d_structure() -> Outcome {
    let d = selftest::symbol_family_grid(Family::TypeD, 13, 100, 30);
    let twisted = selftest::symbol_family_grid(Family::Type2D, 13, 100, 30);
    let (lists, list_bad) = selftest::trivial_case_lists(13, 100, 30);
    let failures: Vec<String> = d
        .failures
        .iter()
        .chain(&twisted.failures)
        .chain(&list_bad)
        .cloned()
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "D {} PASS / {} UNSUPPORTED, 2D {} PASS / {} UNSUPPORTED, {lists} case-list checks, {} FAIL {}",
            d.pass,
            d.unsupported,
            twisted.pass,
            twisted.unsupported,
            failures.len(),
            first(&failures)
        ),
    )
}

fn cyclotomic() -> Outcome {
    let bad = selftest::cyclotomic_suite(60, 50, 100);
    outcome(
        bad.is_empty(),
        format!(
            "d <= 60, p <= 50, q <= 100: {} violations {}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn scan_output(threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_blockwitness"))
        .args([
            "--threads",
            threads,
            "scan",
            "--conjecture",
            "a",
            "--n-min",
            "8",
            "--n-max",
            "30",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "scan exited with {}", out.status);
    out.stdout
}

fn determinism() -> Outcome {
    let one = scan_output("1");
    let eight = scan_output("8");
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    outcome(
        one == eight && lines > 0,
        format!("{lines} lines, identical: {}", one == eight),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("orthogonality", Duration::from_secs(60), orthogonality),
        (
            "symmetric witnesses against the oracle",
            Duration::from_secs(300),
            symmetric_witnesses,
        ),
        (
            "nontrivial intersections with q = 2",
            Duration::from_secs(600),
            intersection_nontrivial,
        ),
        (
            "distinct p'-principal sets",
            Duration::from_secs(600),
            sets_differ,
        ),
        (
            "A_8 pairs of degrees 14 and 64",
            Duration::from_secs(60),
            alternating_vector,
        ),
        ("type A cross-validation", Duration::from_secs(600), type_a),
        ("B/C verification", Duration::from_secs(600), bc),
        ("D and twisted D structure", Duration::from_secs(600), d_structure),
        ("cyclotomic invariants", Duration::from_secs(60), cyclotomic),
        (
            "determinism across worker counts",
            Duration::from_secs(600),
            determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed <= *budget;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.2}s of {}s)",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            name,
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
