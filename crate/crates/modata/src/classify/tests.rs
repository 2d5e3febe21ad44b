use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::*;
use crate::oracle::{fourier_of_eigen, is_near_integer, n_tensor, to_grid};
use crate::tables::equivalent;

fn catalog_table(name: &str) -> ExactMatrix<BigInt> {
    catalog::<BigInt>()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap()
        .table
}

/// Nonnegative integral N by floating point, independent of the exact suite.
fn oracle_integral(p: &ExactMatrix<BigInt>) -> bool {
    let s = fourier_of_eigen(&to_grid(p));
    n_tensor(&s)
        .iter()
        .flatten()
        .flatten()
        .all(|&x| is_near_integer(x) && x.0 > -1e-9)
}

#[test]
fn mutual_divisor_pairs_match_brute_force() {
    let mut brute = Vec::new();
    for a in 1..200u64 {
        for b in a + 1..200 {
            if (2 * b + 4) % a == 0 && (2 * a + 4) % b == 0 {
                brute.push((a, b));
            }
        }
    }
    assert_eq!(mutual_divisor_pairs(200), brute);
}

#[test]
fn mutual_divisor_pairs_known_list() {
    let listed = vec![
        (1, 2),
        (1, 3),
        (1, 6),
        (2, 4),
        (2, 8),
        (3, 10),
        (4, 6),
        (4, 12),
        (6, 16),
        (8, 10),
        (12, 28),
    ];
    assert_eq!(mutual_divisor_pairs(1000), listed);
    assert_eq!(square_order_filter(&listed), vec![(2, 4), (4, 12)]);
}

#[test]
fn non_real_rank5_leaves_only_three_threes() {
    let configs = non_real_row_configurations(5);
    let open: Vec<&Vec<u64>> = configs
        .iter()
        .filter(|c| c.refutation.is_none())
        .map(|c| &c.degrees)
        .collect();
    assert_eq!(open, vec![&vec![1, 1, 1, 3, 3]]);

    let tails: BTreeSet<(u64, u64)> = configs
        .iter()
        .filter(|c| c.degree_one_count == 3)
        .map(|c| (c.degrees[3], c.degrees[4]))
        .collect();
    let listed: BTreeSet<(u64, u64)> = [(1, 2), (1, 4), (2, 5), (3, 6), (6, 9), (3, 3)]
        .into_iter()
        .filter(|&(a, _)| a > 1)
        .collect();
    assert_eq!(tails, listed);
    let four_ones: BTreeSet<u64> = configs
        .iter()
        .filter(|c| c.degree_one_count == 4)
        .map(|c| c.degrees[4])
        .collect();
    assert_eq!(four_ones, BTreeSet::from([2, 4]));
}

#[test]
fn non_real_rank4_is_refuted() {
    let configs = non_real_row_configurations(4);
    assert_eq!(configs.len(), 1);
    assert_eq!(configs[0].degrees, vec![1, 1, 1, 3]);
    assert!(configs[0].refutation.is_some());
}

#[test]
fn separate_rank5_table_is_the_first_rank5_table() {
    assert!(equivalent(
        &separate_rank5_table::<BigInt>(),
        &catalog_table("rank5-[1,1,2,2,2]")
    ));
}

#[test]
fn rank2_engine() {
    let r = classify_rank2::<BigInt>();
    assert_eq!(r.survivors.len(), 1);
    assert!(equivalent(
        &r.survivors[0].table,
        &catalog_table("rank2-[1,1]")
    ));
    assert!(r.unresolved.is_empty());
    let k4 = r.rejections_matching("(1,4)").next().unwrap();
    assert!(k4.witness.contains("3/2"));
}

#[test]
fn rank3_engines() {
    let sym = classify_rank3_symmetric::<BigInt>();
    assert_eq!(sym.survivor_tables().len(), 1);
    assert!(equivalent(
        sym.survivor_tables()[0],
        &catalog_table("rank3-[1,1,2]")
    ));
    assert!(sym.unresolved.is_empty());
    assert!(sym
        .rejected
        .iter()
        .any(|r| r.rule == "sturm_count" && r.candidate.contains("625u^4")));

    let asym = classify_rank3_asymmetric::<BigInt>();
    assert_eq!(asym.survivors.len(), 1);
    assert!(equivalent(
        &asym.survivors[0].table,
        &catalog_table("rank3-Z3")
    ));
    let k9 = asym.rejections_matching("(1,9,9)").next().unwrap();
    assert!(k9.witness.contains("10/6"));
}

#[test]
fn rank4_engine_is_settled_and_survivors_check_out() {
    let r = classify_rank4_linear::<BigInt>();
    assert!(r.unresolved.is_empty());
    assert_eq!(r.search_bound, SearchBound::Exhaustive);
    for s in &r.survivors {
        assert!(s.report.passed());
        assert!(oracle_integral(&s.table));
    }
    // rejected tables really fail by the oracle as well
    for rej in r.rejected.iter().filter(|x| x.rule == "allen_integrality") {
        assert!(!oracle_integral(rej.table.as_ref().unwrap()));
    }
}

#[test]
fn rank4_engine_is_thread_count_independent() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(classify_rank4_linear::<BigInt>)
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn collector_dedupes_permuted_tables() {
    let p = catalog_table("rank4-[1,1,4,6]");
    let mut rows = p.entries().to_vec();
    for row in rows.iter_mut() {
        row.swap(2, 3);
    }
    rows.swap(2, 3);
    let q = ExactMatrix::new(rows, None, p.role()).unwrap();
    let mut c = Collector::new();
    c.consider("a".into(), p);
    c.consider("b".into(), q);
    let r = c.finish(4, &[], SearchBound::Exhaustive);
    assert_eq!(r.survivors.len(), 1);
    assert_eq!(
        r.survivors[0].tag.as_deref(),
        Some("rank4-[1,1,4,6] (statement)")
    );
}

#[test]
fn integral_routes() {
    for rank in 3..=5 {
        let r = integral_nonexistence::<BigInt>(rank, 2000);
        assert!(r.survivors.is_empty());
        assert!(r.unresolved.is_empty());
        assert!(r
            .notes
            .iter()
            .any(|n| n.starts_with("(b) unconditional: impossible")));
    }
    assert!(parity_cases(5).iter().all(|c| c.impossible));
    assert!(parity_cases(5)[2].label.contains("3 mod 4"));
}

#[test]
fn negative_controls_fail_as_expected() {
    for e in catalog::<BigInt>().into_iter().filter(|e| e.is_negative()) {
        let report = crate::tables::full_suite(&e.table);
        let expected = e.expected_failure.as_deref().unwrap();
        assert!(report.failed(expected), "{} should fail {expected}", e.name);
        assert!(!oracle_integral(&e.table) || !report.passed());
    }
}
