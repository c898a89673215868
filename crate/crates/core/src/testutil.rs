//! Shared fixtures for unit tests.

use crate::interval::{Dataset, Interval};
use crate::interval_tree::{IntervalTree, NodeRef};

/// x1=[1,5] w=10, x2=[3,7] w=20, x3=[6,9] w=5, x4=[2,8] w=15.
pub(crate) fn d1() -> Dataset {
    Dataset::from_intervals(vec![
        Interval::new(1, 1.0, 5.0, 10.0),
        Interval::new(2, 3.0, 7.0, 20.0),
        Interval::new(3, 6.0, 9.0, 5.0),
        Interval::new(4, 2.0, 8.0, 15.0),
    ])
    .unwrap()
}

/// Checks every structural invariant of an interval tree and that each
/// interval is stored exactly once.
pub(crate) fn check_node_invariants(tree: &IntervalTree) {
    fn walk(node: NodeRef<'_>, lo: f64, hi: f64, seen: &mut Vec<u64>) {
        let c = node.center();
        let left: Vec<&Interval> = node.by_left().collect();
        let right: Vec<&Interval> = node.by_right().collect();
        assert!(!left.is_empty());
        assert!(left.windows(2).all(|w| w[0].l <= w[1].l));
        assert!(right.windows(2).all(|w| w[0].r <= w[1].r));
        let mut a: Vec<u64> = left.iter().map(|x| x.id).collect();
        let mut b: Vec<u64> = right.iter().map(|x| x.id).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        for x in &left {
            assert!(x.l <= c && c <= x.r);
            assert!(x.l > lo && x.r < hi);
        }
        seen.extend(a);
        if let Some(l) = node.left() {
            walk(l, lo, c, seen);
        }
        if let Some(r) = node.right() {
            walk(r, c, hi, seen);
        }
    }
    let mut seen = Vec::new();
    if let Some(root) = tree.root() {
        walk(root, f64::NEG_INFINITY, f64::INFINITY, &mut seen);
    }
    let n = seen.len();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), n, "interval stored twice");
}
