use blockwitness_core::arith::{
    block_branch, odd_primes_up_to, psi_value, Branch, PrimePower, PsiExpr, PsiKind,
};
use blockwitness_core::blocks::principal_block_sn;
use blockwitness_core::conjectures::{oracle_core, oracle_degree};
use blockwitness_core::partitions::{degree_sn, degree_valuation_sn, Partition};
use blockwitness_core::symbols::Symbol;
use blockwitness_core::witnesses::{witness_partition_sn, witness_partition_type_a};
use num_traits::Zero;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..9, 0..9).prop_map(Partition::from_multiset)
}

fn prime_power() -> impl Strategy<Value = PrimePower> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49])
        .prop_map(|q| PrimePower::from_value(q).unwrap())
}

fn psi_expr() -> impl Strategy<Value = PsiExpr> {
    (
        prop::collection::vec((any::<bool>(), 1u64..13, -2i64..3), 0..5),
        -3i64..4,
        1i64..6,
        1i64..6,
    )
        .prop_map(|(factors, qe, num, den)| {
            let mut expr = PsiExpr::one().with_scalar(num, den).with_q_power(qe);
            for (plus, k, e) in factors {
                expr.mul_factor(if plus { PsiKind::Plus } else { PsiKind::Minus }, k, e);
            }
            expr
        })
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (
        prop::collection::btree_set(0usize..12, 0..6),
        prop::collection::btree_set(0usize..12, 0..6),
    )
        .prop_map(|(top, bottom)| {
            let top: Vec<usize> = top.into_iter().collect();
            let bottom: Vec<usize> = bottom.into_iter().collect();
            Symbol::from_sets(&top, &bottom).unwrap()
        })
}

proptest! {
    #[test]
    fn evaluation_is_multiplicative(x in psi_expr(), y in psi_expr(), q in prime_power()) {
        prop_assert_eq!(x.mul(&y).evaluate(&q), x.evaluate(&q) * y.evaluate(&q));
    }

    #[test]
    fn psi_minus_and_plus_multiply_to_double_index(k in 1u64..30, q in prime_power()) {
        let product = psi_value(k, &q, PsiKind::Minus) * psi_value(k, &q, PsiKind::Plus);
        prop_assert_eq!(product, psi_value(2 * k, &q, PsiKind::Minus));
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition()) {
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().size(), lambda.size());
        prop_assert_eq!(degree_sn(&lambda.conjugate()), degree_sn(&lambda));
    }

    #[test]
    fn cores_agree_across_routes(lambda in partition(), e in 2usize..8, pad in 0usize..5) {
        let core = lambda.e_core(e);
        prop_assert_eq!(&lambda.e_core_with_padding(e, lambda.len() + pad), &core);
        prop_assert_eq!(&oracle_core(&lambda, e), &core);
        prop_assert_eq!((lambda.size() - core.size()) % e, 0);
        prop_assert_eq!(core.e_core(e), core.clone());
        prop_assert_eq!(lambda.conjugate().e_core(e), core.conjugate());
    }

    #[test]
    fn degrees_agree_across_routes(lambda in partition()) {
        let degree = degree_sn(&lambda);
        prop_assert_eq!(oracle_degree(&lambda), degree.clone());
        for p in [2u64, 3, 5, 7] {
            let mut v = 0;
            let mut d = degree.clone();
            while (&d % p).is_zero() {
                d /= p;
                v += 1;
            }
            prop_assert_eq!(degree_valuation_sn(&lambda, p), v);
        }
    }

    #[test]
    fn symbol_reductions_preserve_shape(s in symbol(), e in 1usize..6) {
        let core = s.e_core(e);
        let cocore = s.e_cocore(e);
        prop_assert_eq!((s.rank() - core.rank()) % e, 0);
        prop_assert_eq!(core.defect(), s.defect());
        prop_assert!(!core.has_e_hook(e));
        prop_assert!(!cocore.has_e_cohook(e));
        prop_assert_eq!(core.e_core(e), core.clone());
        let (top, bottom) = s.shifted_rows(2);
        prop_assert_eq!(Symbol::from_rows(top, bottom).unwrap(), s.clone());
    }

    #[test]
    fn symbol_display_round_trips(s in symbol()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<Symbol>().unwrap(), s);
    }

    #[test]
    fn symmetric_witness_in_both_blocks(half in 4usize..300, idx in 0usize..60) {
        let n = 2 * half;
        let primes: Vec<u64> = odd_primes_up_to(n as u64);
        let p = primes[idx % primes.len()];
        let lambda = witness_partition_sn(n, p).unwrap();
        prop_assert_eq!(lambda.size(), n);
        prop_assert!(lambda != Partition::row(n));
        prop_assert!(principal_block_sn(&lambda, p));
        prop_assert!(principal_block_sn(&lambda, 2));
        prop_assert_eq!(degree_valuation_sn(&lambda, p), 0);
        prop_assert_eq!(degree_valuation_sn(&lambda, 2), 0);
    }

    #[test]
    fn type_a_witness_has_listed_core(n in 4usize..400, e in 2usize..40, p_idx in 0usize..20) {
        prop_assume!(e <= n && n % e >= 2);
        let p = odd_primes_up_to(100)[p_idx];
        let lambda = witness_partition_type_a(n, e, p).unwrap();
        prop_assert_eq!(lambda.size(), n);
        prop_assert_eq!(lambda.e_core(e), Partition::row(n % e));
    }

    #[test]
    fn branches_are_exclusive(q in prime_power(), p_idx in 0usize..24) {
        let p = odd_primes_up_to(97)[p_idx];
        prop_assume!(q.ell() != p);
        let (e, branch) = block_branch(p, &q).unwrap();
        let minus = (psi_value(e, &q, PsiKind::Minus) % p).is_zero();
        let plus = (psi_value(e, &q, PsiKind::Plus) % p).is_zero();
        prop_assert_eq!(minus, branch == Branch::Core);
        prop_assert_eq!(plus, branch == Branch::Cocore);
    }
}
