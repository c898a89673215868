use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;

use topk_stab::harness::Algorithm;
use topk_stab::interval_forest::ForestTrace;
use topk_stab::{
    compare, oracle_topk, Dataset, Interval, IntervalForest, IntervalTree, PathArrayTree, Query,
    QueryStats, SegmentTree, TopKIndex, WeightOrder,
};

/// Small integer endpoints and weights so that shared endpoints, degenerate
/// intervals and weight ties are common.
fn intervals(max_n: usize) -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0i32..40, 0i32..12, 0i32..8), 0..max_n).prop_map(|raw| {
        raw.into_iter()
            .enumerate()
            .map(|(i, (l, len, w))| {
                let l = l as f64;
                Interval::new(i as u64 * 3 + 1, l, l + len as f64, w as f64)
            })
            .collect()
    })
}

fn dataset(max_n: usize) -> impl Strategy<Value = Dataset> {
    intervals(max_n).prop_map(|v| Dataset::from_intervals(v).unwrap())
}

/// Every endpoint, every gap midpoint and both outside regions.
fn probe_points() -> impl Iterator<Item = f64> {
    (-4..=104).map(|i| i as f64 / 2.0)
}

fn brute_stab(data: &Dataset, s: f64) -> BTreeSet<u64> {
    data.intervals().iter().filter(|x| x.l <= s && s <= x.r).map(|x| x.id).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compare_is_a_strict_total_order(v in intervals(40)) {
        for a in &v {
            prop_assert_eq!(compare(a, a), Ordering::Equal);
            for b in &v {
                prop_assert_eq!(compare(a, b), compare(b, a).reverse());
                if a.id != b.id {
                    prop_assert_ne!(compare(a, b), Ordering::Equal);
                }
            }
        }
        let mut sorted = v.clone();
        sorted.sort_by(compare);
        for w in sorted.windows(2) {
            prop_assert!(w[0].w > w[1].w || (w[0].w == w[1].w && w[0].id < w[1].id));
        }
    }

    #[test]
    fn every_algorithm_matches_the_oracle(data in dataset(60), k in 1usize..12) {
        let sorted = data.sorted();
        let indexes: Vec<_> = Algorithm::ALL.iter().map(|a| a.build(&sorted)).collect();
        for s in probe_points() {
            for k in [1, k, data.len() + 1] {
                let q = Query::new(s, k);
                let expected = oracle_topk(&data, q).ids();
                for index in &indexes {
                    let mut stats = QueryStats::default();
                    let mut out = Vec::new();
                    index.as_index().query_into(q, &mut out, &mut stats);
                    let got: Vec<u64> = out.iter().map(|x| x.id).collect();
                    prop_assert_eq!(&got, &expected, "{} s={} k={}", index.algorithm(), s, k);
                    prop_assert_eq!(index.bound_violation(q, &stats), None);
                }
            }
        }
    }

    #[test]
    fn interval_tree_stab_reports_each_once(data in dataset(80)) {
        let tree = IntervalTree::build(&data.sorted());
        let n = data.len();
        if n > 0 {
            let bound = (usize::BITS - n.leading_zeros()) as usize;
            prop_assert!(tree.height() <= bound, "height {} for n={}", tree.height(), n);
        }
        for s in probe_points() {
            let mut ids = Vec::new();
            let count = tree.stab(s, |x| ids.push(x.id));
            prop_assert_eq!(count, ids.len());
            let unique: BTreeSet<u64> = ids.iter().copied().collect();
            prop_assert_eq!(unique.len(), ids.len());
            prop_assert_eq!(unique, brute_stab(&data, s));
        }
    }

    #[test]
    fn forest_chunks_and_early_termination(data in dataset(120), k in 1usize..10) {
        let n = data.len();
        let forest = IntervalForest::build(&data.sorted());
        let bounds = forest.chunk_bounds();
        let p = (1..).find(|p| p * p >= n).unwrap_or(0);
        prop_assert!(forest.tree_count() <= p.max(1));
        let mut next = 0u32;
        for b in bounds {
            prop_assert_eq!(b.ranks.start, next);
            prop_assert!(b.ranks.end > b.ranks.start);
            prop_assert!(b.max_weight >= b.min_weight);
            next = b.ranks.end;
        }
        prop_assert_eq!(next as usize, n);
        for w in bounds.windows(2) {
            prop_assert!(w[0].min_weight >= w[1].max_weight);
        }

        let mut trace = ForestTrace::default();
        let mut out = Vec::new();
        for s in probe_points() {
            let mut stats = QueryStats::default();
            forest.query_traced(Query::new(s, k), &mut out, &mut stats, &mut trace);
            let visited = trace.per_tree_stabbed.len();
            prop_assert_eq!(visited as u64, stats.trees);
            prop_assert!(visited <= forest.tree_count());
            // Stops at the first tree that completes k results, or after the last.
            let before_last: u64 = trace.per_tree_stabbed[..visited.saturating_sub(1)].iter().sum();
            prop_assert!((before_last as usize) < k);
            let total: u64 = trace.per_tree_stabbed.iter().sum();
            prop_assert!(total as usize >= k || visited == forest.tree_count());
            prop_assert_eq!(out.iter().map(|x| x.id).collect::<Vec<_>>(), oracle_topk(&data, Query::new(s, k)).ids());
        }
    }

    #[test]
    fn segment_tree_leaves_and_copies(data in dataset(80)) {
        let sorted = data.sorted();
        let tree = SegmentTree::build(&sorted);
        prop_assert!(tree.canonical_copies() <= data.len() * 2 * tree.height());
        for leaf in 0..tree.leaf_count() {
            let s = tree.grid().representative(leaf);
            prop_assert_eq!(tree.grid().leaf_of(s), leaf);
            let mut ids = BTreeSet::new();
            let reached = tree.stab(s, |x| { ids.insert(x.id); });
            prop_assert_eq!(reached, leaf);
            prop_assert_eq!(ids, brute_stab(&data, s));
        }

        let psa = PathArrayTree::build(&sorted);
        prop_assert_eq!(psa.duplicates_removed(), 0);
        prop_assert_eq!(psa.stored_copies(), psa.path_array_entries());
        for leaf in 0..psa.grid().leaf_count() {
            let s = psa.grid().representative(leaf);
            let all = Query::new(s, data.len().max(1));
            let array: Vec<u64> = psa.path_array(leaf).map(|x| x.id).collect();
            prop_assert_eq!(array, oracle_topk(&data, all).ids());
        }
    }

    #[test]
    fn min_order_returns_lightest_first(v in intervals(50), k in 1usize..8) {
        let data = Dataset::ingest(v.iter().map(|x| (x.id, x.l, x.r, x.w)), WeightOrder::Min).unwrap();
        let psa = PathArrayTree::build(&data.sorted());
        for s in probe_points() {
            let mut expected: Vec<&Interval> = v.iter().filter(|x| x.is_stabbed_by(s)).collect();
            expected.sort_by(|a, b| a.w.total_cmp(&b.w).then(a.id.cmp(&b.id)));
            expected.truncate(k);
            let got = psa.topk(Query::new(s, k));
            prop_assert_eq!(got.ids(), expected.iter().map(|x| x.id).collect::<Vec<_>>());
            for (g, e) in got.iter().zip(&expected) {
                prop_assert_eq!(WeightOrder::Min.present(g.w), e.w);
            }
        }
    }
}

/// Six intervals where `s` stabs only x3 and x6, x6 the heavier. The leaf for
/// `s` must hold exactly `[x6, x3]`, and every algorithm must agree.
#[test]
fn six_interval_leaf_array() {
    let data = Dataset::from_intervals(vec![
        Interval::new(1, 0.0, 2.0, 9.0),
        Interval::new(2, 1.0, 3.0, 8.0),
        Interval::new(3, 2.5, 7.0, 4.0),
        Interval::new(4, 8.0, 10.0, 7.0),
        Interval::new(5, 9.0, 12.0, 6.0),
        Interval::new(6, 4.0, 11.0, 5.0),
    ])
    .unwrap();
    let s = 5.0;
    let psa = PathArrayTree::build(&data.sorted());
    let leaf = psa.grid().leaf_of(s);
    let array: Vec<u64> = psa.path_array(leaf).map(|x| x.id).collect();
    assert_eq!(array, vec![6, 3]);
    for a in Algorithm::ALL {
        let index = a.build(&data.sorted());
        assert_eq!(index.as_index().topk(Query::new(s, 1)).ids(), vec![6], "{a}");
        assert_eq!(index.as_index().topk(Query::new(s, 5)).ids(), vec![6, 3], "{a}");
    }
}
