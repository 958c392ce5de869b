//! Partition-count properties: oracle equivalence, the generating-function
//! identity, the monotone bound on p_m, leading-term convergence, and
//! property tests for partial-sum tables.

use proptest::prelude::*;
use std::sync::Arc;
use tauber_core::partitions::{
    brute_force_p_h, p_h_table, p_m_table, partial_sums_exact, partial_sums_real,
    asymptotic_main_term, PartSet,
};
use tauber_core::series::{eval_series, product_oracle, GrowthCertificate, SeriesSpec};

fn test_family() -> Vec<PartSet> {
    [
        vec![1u64],
        vec![1, 2],
        vec![2, 3],
        vec![1, 2, 3],
        vec![3, 4, 5],
        vec![1, 5, 6],
    ]
    .into_iter()
    .map(|p| PartSet::new(p).unwrap())
    .collect()
}

#[test]
fn dp_matches_enumeration_oracle() {
    for set in test_family() {
        let table = p_h_table(&set, 40).unwrap();
        for n in 0..=40 {
            assert_eq!(
                table.count(n),
                brute_force_p_h(&set, n).unwrap(),
                "{set} at n = {n}"
            );
        }
    }
}

#[test]
fn generating_function_identity_at_half() {
    // Series of table coefficients vs the infinite product, within the
    // certified tail (2x for floating slack).
    for set in test_family() {
        let table = p_h_table(&set, 200).unwrap();
        let r = set.cardinality() as f64 - 1.0;
        let values: Vec<f64> = (0..=200).map(|n| table.value_f64(n)).collect();
        let cert = GrowthCertificate::from_scan(r, values.iter().copied());
        let spec = SeriesSpec::from_values(format!("pH{set}"), values, cert, 0).unwrap();
        let out = eval_series(&spec, 0.5, 1e-12).unwrap();
        let oracle = product_oracle(&set, 0.5).unwrap();
        assert!(
            (out.value - oracle).abs() <= 2.0 * out.tail_bound,
            "{set}: |{} - {oracle}| > 2 × {}",
            out.value,
            out.tail_bound
        );
    }
}

#[test]
fn p_m_monotone_bound() {
    for m in 1..=5u32 {
        let table = p_m_table(m, 1000).unwrap();
        for n in 0..=1000usize {
            let bound = (n as u128 + 1).pow(m);
            assert!(
                table.count(n) <= bound,
                "p_{m}({n}) = {} > (n+1)^m = {bound}",
                table.count(n)
            );
        }
    }
}

#[test]
fn leading_term_ratio_converges() {
    // |p_H(n)·Γ(k)·Πh / n^(k-1) - 1| shrinks by at least 5x from n = 100
    // to n = 10^4 and ends below 1%.
    let set = PartSet::new(vec![1, 2, 3]).unwrap();
    let table = p_h_table(&set, 10_000).unwrap();
    let err = |n: usize| {
        let main = asymptotic_main_term(&set, n as u64).unwrap();
        (table.value_f64(n) / main - 1.0).abs()
    };
    let e2 = err(100);
    let e4 = err(10_000);
    assert!(e4 <= 0.01, "relative error at 1e4 is {e4}");
    assert!(e4 <= e2 / 5.0, "error should shrink 5x: {e2} -> {e4}");
}

#[test]
fn p_m_equals_conjugate_definition() {
    // Direct check of "at most m parts" against enumeration over all
    // partitions of n (parts unrestricted, count <= m).
    fn enumerate(n: usize, max_part: usize, parts_left: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        if parts_left == 0 {
            return 0;
        }
        (1..=max_part.min(n))
            .map(|p| enumerate(n - p, p, parts_left - 1))
            .sum()
    }
    for m in 1..=4u32 {
        let table = p_m_table(m, 18).unwrap();
        for n in 0..=18usize {
            assert_eq!(
                table.count(n),
                enumerate(n, n.max(1), m as usize) as u128,
                "p_{m}({n})"
            );
        }
    }
}

proptest! {
    #[test]
    fn partial_sum_difference_property(
        a in prop::collection::vec(-50i128..50, 1..80),
        seed in prop::collection::vec(-1000i128..1000, 1..80),
    ) {
        let len = a.len().min(seed.len());
        let a = &a[..len];
        let b = &seed[..len];
        let sums = partial_sums_exact(a, b).unwrap();
        prop_assert_eq!(sums.sum_at(0), a[0] * b[0]);
        for x in 1..len {
            prop_assert_eq!(sums.sum_at(x) - sums.sum_at(x - 1), a[x] * b[x]);
        }
    }

    #[test]
    fn partial_sum_difference_property_real(
        a in prop::collection::vec(-10.0f64..10.0, 2..60),
    ) {
        let b: Vec<f64> = a.iter().map(|x| x * 1.5 + 2.0).collect();
        let sums = partial_sums_real(&a, &b).unwrap();
        for x in 1..a.len() {
            let diff = sums.sum_at(x) - sums.sum_at(x - 1);
            prop_assert!((diff - a[x] * b[x]).abs() <= 1e-9);
        }
    }

    #[test]
    fn dp_matches_oracle_on_random_sets(
        parts in prop::collection::btree_set(1u64..12, 1..4),
        n in 0usize..28,
    ) {
        let set = PartSet::new(parts.iter().copied().collect::<Vec<_>>()).unwrap();
        let table = p_h_table(&set, n).unwrap();
        prop_assert_eq!(table.count(n), brute_force_p_h(&set, n).unwrap());
    }
}

#[test]
fn series_spec_closure_composition() {
    // a_n = prime indicator composed over a count table, as the sweeps do.
    let set = PartSet::new(vec![1, 2]).unwrap();
    let table = Arc::new(p_h_table(&set, 100).unwrap());
    let spec = SeriesSpec::new(
        "composed",
        {
            let table = Arc::clone(&table);
            Arc::new(move |n| if n == 2 || n == 3 || n == 5 || n == 7 { table.value_f64(n) } else { 0.0 })
        },
        100,
        GrowthCertificate::new(1.2, 1.0),
        0,
    )
    .unwrap();
    let out = eval_series(&spec, 0.25, 1e-10).unwrap();
    let by_hand: f64 = [2usize, 3, 5, 7]
        .iter()
        .map(|&p| table.value_f64(p) * 0.25f64.powi(p as i32))
        .sum();
    assert!((out.value - by_hand).abs() <= 1e-12);
}
