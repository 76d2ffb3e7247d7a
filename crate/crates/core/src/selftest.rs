//! Invariant suites shared by the `selftest` command and the test targets.
//! Each suite returns the list of violations it found.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    block_branch, d_p, odd_primes_up_to, phi_value, primes_up_to, psi_value, Branch, PrimePower, PsiExpr,
    PsiKind,
};
use crate::blocks::BlockContext;
use crate::conjectures::{cross_validate_type_a, oracle_member};
use crate::partitions::{degree_sn, factorial, partitions};
use crate::symbols::{listed_trivial_reduction, trivial_symbol, Family};
use crate::witnesses::{verify_witness, Status, WitnessObject};

pub fn prime_powers_up_to(bound: u64) -> Vec<PrimePower> {
    (2..=bound)
        .filter_map(|q| PrimePower::from_value(q).ok())
        .collect()
}

fn divides(p: u64, x: &BigInt) -> bool {
    (x % BigInt::from(p)).is_zero()
}

/// Sum of squared degrees equals `n!`.
pub fn orthogonality(n_max: usize) -> Vec<String> {
    (1..=n_max)
        .filter_map(|n| {
            let sum = partitions(n).map(|l| {
                let d = degree_sn(&l);
                &d * &d
            });
            let total: num_bigint::BigUint = sum.sum();
            (total != factorial(n)).then(|| format!("n = {n}: sum of squares {total}"))
        })
        .collect()
}

/// Divisibility of cyclotomic values, the factorisation of `q^k - 1`, the
/// core/cocore dichotomy and multiplicativity of formal Psi products.
pub fn cyclotomic_suite(d_max: u64, p_max: u64, q_max: u64) -> Vec<String> {
    let mut bad = Vec::new();
    let qs = prime_powers_up_to(q_max);
    let primes = primes_up_to(p_max);
    for q in &qs {
        let phis: Vec<BigInt> = (0..=d_max)
            .map(|d| if d == 0 { BigInt::zero() } else { phi_value(d, q) })
            .collect();
        for &p in &primes {
            if q.ell() == p || p == 2 {
                continue;
            }
            let order = d_p(q.residue(p) as i64, p).expect("coprime");
            for d in 1..=d_max {
                let phi = &phis[d as usize];
                let mut rest = d / order;
                let shape = d % order == 0 && {
                    while rest.is_multiple_of(p) {
                        rest /= p;
                    }
                    rest == 1
                };
                if divides(p, phi) != shape {
                    bad.push(format!(
                        "q={q} p={p} d={d}: p | Phi_d(q) disagrees with d = p^x d_p(q)"
                    ));
                }
                if divides(p * p, phi) && d != order {
                    bad.push(format!("q={q} p={p} d={d}: p^2 | Phi_d(q) with d != d_p(q)"));
                }
            }
            match block_branch(p, q) {
                Ok((e, branch)) => {
                    let minus = divides(p, &psi_value(e, q, PsiKind::Minus));
                    let plus = divides(p, &psi_value(e, q, PsiKind::Plus));
                    let expected = match branch {
                        Branch::Core => minus && !plus,
                        Branch::Cocore => plus && !minus,
                    };
                    if !expected {
                        bad.push(format!("q={q} p={p}: branch {branch} at e={e} is not exclusive"));
                    }
                }
                Err(err) => bad.push(format!("q={q} p={p}: {err}")),
            }
        }
        if q.ell() != 2 {
            for d in 1..=d_max {
                let power_of_two = d.is_power_of_two();
                if divides(2, &phis[d as usize]) != power_of_two {
                    bad.push(format!("q={q} d={d}: 2 | Phi_d(q) disagrees with d a power of 2"));
                }
            }
        }
        for k in 1..=d_max {
            let product = (1..=k)
                .filter(|d| k % d == 0)
                .fold(BigInt::one(), |acc, d| acc * &phis[d as usize]);
            if product != psi_value(k, q, PsiKind::Minus) {
                bad.push(format!("q={q} k={k}: divisor product of Phi is not q^k - 1"));
            }
        }
        let x = PsiExpr::one()
            .with_scalar(3, 2)
            .factor(PsiKind::Minus, 6, 2)
            .factor(PsiKind::Plus, 5, -1);
        let y = PsiExpr::one()
            .with_q_power(2)
            .factor(PsiKind::Minus, 3, -1)
            .factor(PsiKind::Plus, 5, 1);
        if x.mul(&y).evaluate(q) != x.evaluate(q) * y.evaluate(q) {
            bad.push(format!("q={q}: evaluation is not multiplicative"));
        }
    }
    bad
}

/// Symmetric-group witnesses for even `n >= 8` with `r >= 1` and for `n = mp`:
/// PASS, and the oracle agrees that the witness lies in both sets.
pub fn symmetric_witness_grid(n_max: usize) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 3..=n_max {
        for p in odd_primes_up_to(n as u64) {
            let r = n % p as usize;
            if r >= 1 && (n % 2 == 1 || n < 8) {
                continue;
            }
            count += 1;
            match verify_witness(Family::Symmetric, n, p, None) {
                Ok(report) => {
                    let Some(WitnessObject::Partition(lambda)) = &report.object else {
                        bad.push(format!("n={n} p={p}: no partition"));
                        continue;
                    };
                    if report.status != Status::Pass {
                        bad.push(format!("n={n} p={p}: {}", report.to_json()));
                    }
                    if !(oracle_member(lambda, p) && oracle_member(lambda, 2)) {
                        bad.push(format!("n={n} p={p}: oracle rejects {lambda}"));
                    }
                }
                Err(err) => bad.push(format!("n={n} p={p}: {err}")),
            }
        }
    }
    (count, bad)
}

pub const TYPE_A_FIELDS: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 13];

/// Type A witnesses against the full q-analogue degree.
pub fn type_a_grid(n_max: usize, p_max: u64) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for eps in [1i8, -1] {
        for &qv in &TYPE_A_FIELDS {
            let q = PrimePower::from_value(qv).expect("prime power");
            for p in odd_primes_up_to(p_max) {
                if q.ell() == p {
                    continue;
                }
                let e = d_p(eps as i64 * q.residue(p) as i64, p).expect("coprime") as usize;
                for n in e..=n_max {
                    if n % e < 2 {
                        continue;
                    }
                    count += 1;
                    match cross_validate_type_a(n, &q, p, eps) {
                        Ok(report) if report.status == Status::Pass => {}
                        Ok(report) => bad.push(format!("eps={eps} q={qv} {}", report.to_json())),
                        Err(err) => bad.push(format!("eps={eps} q={qv} p={p} n={n}: {err}")),
                    }
                }
            }
        }
    }
    (count, bad)
}

/// Tallies for a symbol-family grid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridTally {
    pub pass: usize,
    pub unsupported: usize,
    pub failures: Vec<String>,
}

/// B/C, D or twisted D witnesses over odd `q <= q_max`, odd `p <= p_max`
/// with `p` dividing the group order, `n <= n_max`.
pub fn symbol_family_grid(family: Family, q_max: u64, p_max: u64, n_max: usize) -> GridTally {
    let mut tally = GridTally::default();
    let min = match family {
        Family::TypeD => 5,
        Family::Type2D => 4,
        _ => 3,
    };
    for q in prime_powers_up_to(q_max).into_iter().filter(|q| q.ell() != 2) {
        for p in odd_primes_up_to(p_max) {
            if q.ell() == p {
                continue;
            }
            let (e, _) = block_branch(p, &q).expect("odd p prime to q");
            for n in min.max(e as usize)..=n_max {
                match verify_witness(family, n, p, Some(&q)) {
                    Ok(report) => match report.status {
                        Status::Pass => tally.pass += 1,
                        Status::Unsupported => tally.unsupported += 1,
                        Status::Fail => tally.failures.push(format!("q={q} {}", report.to_json())),
                    },
                    Err(err) => tally.failures.push(format!("q={q} p={p} n={n}: {err}")),
                }
            }
        }
    }
    tally
}

/// Cores and cocores of trivial D and twisted D symbols against the listed
/// case split, at every `(n, e, branch)` arising on the grid.
pub fn trivial_case_lists(q_max: u64, p_max: u64, n_max: usize) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for family in [Family::TypeD, Family::Type2D] {
        for q in prime_powers_up_to(q_max).into_iter().filter(|q| q.ell() != 2) {
            for p in odd_primes_up_to(p_max) {
                if q.ell() == p {
                    continue;
                }
                for n in 5..=n_max {
                    let ctx = BlockContext::lie_type(family, n, p, q.clone()).expect("valid context");
                    let triv = trivial_symbol(family, n).expect("rank in range");
                    let reduced = match ctx.branch {
                        Branch::Core => triv.e_core(ctx.e),
                        Branch::Cocore => triv.e_cocore(ctx.e),
                    };
                    count += 1;
                    if Some(&reduced) != listed_trivial_reduction(family, n, ctx.e, ctx.branch).as_ref() {
                        bad.push(format!(
                            "{family} n={n} e={} {}: got {reduced}",
                            ctx.e, ctx.branch
                        ));
                    }
                }
            }
        }
    }
    (count, bad)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every suite at full (`quick = false`) or reduced size.
pub fn run_all(quick: bool) -> Vec<SuiteResult> {
    let scale = |full: usize, small: usize| if quick { small } else { full };
    let mut out = Vec::new();
    let n_orth = scale(25, 15);
    out.push(SuiteResult {
        name: "orthogonality",
        instances: n_orth,
        failures: orthogonality(n_orth),
    });
    let (d, pm, qm) = if quick { (30, 30, 30) } else { (60, 50, 100) };
    out.push(SuiteResult {
        name: "cyclotomic",
        instances: d as usize,
        failures: cyclotomic_suite(d, pm, qm),
    });
    let (count, failures) = symmetric_witness_grid(scale(60, 30));
    out.push(SuiteResult {
        name: "symmetric-witnesses",
        instances: count,
        failures,
    });
    let (count, failures) = type_a_grid(scale(30, 16), if quick { 23 } else { 50 });
    out.push(SuiteResult {
        name: "type-a-witnesses",
        instances: count,
        failures,
    });
    for family in [Family::TypeBC, Family::TypeD, Family::Type2D] {
        let tally = symbol_family_grid(family, 13, if quick { 31 } else { 100 }, scale(30, 16));
        let name = match family {
            Family::TypeBC => "bc-witnesses",
            Family::TypeD => "d-witnesses",
            _ => "2d-witnesses",
        };
        out.push(SuiteResult {
            name,
            instances: tally.pass + tally.unsupported,
            failures: tally.failures,
        });
    }
    let (count, failures) = trivial_case_lists(13, if quick { 31 } else { 100 }, scale(30, 16));
    out.push(SuiteResult {
        name: "trivial-case-lists",
        instances: count,
        failures,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for suite in run_all(true) {
            assert!(
                suite.passed(),
                "{}: {:?}",
                suite.name,
                &suite.failures[..suite.failures.len().min(5)]
            );
            assert!(suite.instances > 0, "{}", suite.name);
        }
    }

    #[test]
    fn prime_power_listing() {
        let qs: Vec<u64> = prime_powers_up_to(16)
            .iter()
            .map(|q| q.value().try_into().unwrap())
            .collect();
        assert_eq!(qs, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
        assert!(crate::arith::is_prime(97));
    }
}
