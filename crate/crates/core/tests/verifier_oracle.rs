mod common;

use coinscale_core::strategies::gen_shapovalov;
use coinscale_core::verifier::{subset_table, DEFAULT_ORACLE_CAP};
use coinscale_core::{admissible_count, expected_syndrome, oracle_admissible_count, verify, Strategy, Syndrome};
use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class_count(s: &Strategy, n: usize, syndrome: &Syndrome) -> u64 {
    u64::try_from(&admissible_count(s, n, syndrome).unwrap().count).unwrap()
}

fn oracle_count(s: &Strategy, n: usize, syndrome: &Syndrome) -> u64 {
    u64::try_from(&oracle_admissible_count(s, n, syndrome, DEFAULT_ORACLE_CAP).unwrap()).unwrap()
}

fn check_against_oracle(s: &Strategy) {
    let realized = expected_syndrome(s);
    let (f, d) = (s.params.f, s.params.d);
    for subset in common::subsets(s.num_weighings()) {
        let sub = s.with_weighings(&subset);
        let proj = realized.project(&subset);
        for n in [f, d] {
            assert_eq!(
                class_count(&sub, n, &proj),
                oracle_count(&sub, n, &proj),
                "{subset:?} n={n}\n{}",
                s.to_json_pretty()
            );
        }
    }
    for syndrome in Syndrome::all(s.num_weighings()) {
        for n in [f, d] {
            assert_eq!(
                class_count(s, n, &syndrome),
                oracle_count(s, n, &syndrome),
                "{syndrome} n={n}"
            );
        }
    }
}

/// Report with the syndrome put back into original weighing order.
fn permuted_report(s: &Strategy, perm: &[usize]) -> serde_json::Value {
    let mut p = s.clone();
    p.weighings = perm.iter().map(|&i| s.weighings[i].clone()).collect();
    let report = verify(&p).unwrap();
    let mut outcomes = vec![report.syndrome.0[0]; perm.len()];
    for (pos, &i) in perm.iter().enumerate() {
        outcomes[i] = report.syndrome.0[pos];
    }
    let mut json = serde_json::to_value(&report).unwrap();
    json["syndrome"] = serde_json::to_value(Syndrome(outcomes)).unwrap();
    json
}

fn check_order_invariance(s: &Strategy) {
    if s.num_weighings() == 0 || verify(s).is_err() {
        return;
    }
    let base = serde_json::to_value(verify(s).unwrap()).unwrap();
    for perm in (0..s.num_weighings()).permutations(s.num_weighings()) {
        assert_eq!(permuted_report(s, &perm), base, "{perm:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_counts_match_coin_level(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_strategy(&mut rng, 12, 4, 4);
        check_against_oracle(&s);
    }

    #[test]
    fn weighing_order_is_irrelevant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_strategy(&mut rng, 14, 4, 4);
        check_order_invariance(&s);
    }
}

#[test]
fn shapovalov_order_invariance() {
    check_order_invariance(&gen_shapovalov());
}

#[test]
fn subset_table_agrees_with_direct_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let s = common::random_strategy(&mut rng, 12, 4, 3);
        let realized = expected_syndrome(&s);
        for row in subset_table(&s).unwrap() {
            let sub = s.with_weighings(&row.weighings);
            let proj = realized.project(&row.weighings);
            assert_eq!(
                u64::try_from(&row.count_f).unwrap(),
                oracle_count(&sub, s.params.f, &proj)
            );
            assert_eq!(
                u64::try_from(&row.count_d).unwrap(),
                oracle_count(&sub, s.params.d, &proj)
            );
        }
    }
}
