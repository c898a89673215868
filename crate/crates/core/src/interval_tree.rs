//! Centered interval tree with stab-all, heap-select top-k queries.
//!
//! Each node stores every interval crossing its center twice: once sorted by
//! left endpoint and once by right endpoint. Intervals entirely left of the
//! center go to the left subtree, entirely right to the right subtree.

use crate::index::{QueryStats, TopKAccumulator, TopKIndex};
use crate::interval::{Interval, Query, SortedDataset};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    center: f64,
    /// `(l, rank)` ascending by `l`.
    by_left: Vec<(f64, u32)>,
    /// `(r, rank)` ascending by `r`.
    by_right: Vec<(f64, u32)>,
    left: u32,
    right: u32,
}

/// The rank-only tree structure. Shared by [`IntervalTree`] and the interval
/// forest, whose trees each cover a subset of one sorted dataset.
#[derive(Debug, Clone, Default)]
pub(crate) struct CenterTree {
    nodes: Vec<Node>,
    height: usize,
}

impl CenterTree {
    pub(crate) fn build(data: &SortedDataset, ranks: Vec<u32>) -> Self {
        let mut tree = CenterTree::default();
        if !ranks.is_empty() {
            let mut endpoints = Vec::with_capacity(ranks.len() * 2);
            tree.height = tree.build_node(data, ranks, &mut endpoints).1;
        }
        tree
    }

    /// Returns `(node index, subtree height)`.
    fn build_node(
        &mut self,
        data: &SortedDataset,
        ranks: Vec<u32>,
        endpoints: &mut Vec<f64>,
    ) -> (u32, usize) {
        if ranks.is_empty() {
            return (NONE, 0);
        }
        endpoints.clear();
        for &rank in &ranks {
            let x = data.get(rank);
            endpoints.push(x.l);
            endpoints.push(x.r);
        }
        // Lower median of all endpoints. It is itself an endpoint, so at least
        // one interval crosses it and both sides hold at most half the subset.
        let mid = (endpoints.len() - 1) / 2;
        let center = *endpoints.select_nth_unstable_by(mid, f64::total_cmp).1;

        let mut crossing = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for rank in ranks {
            let x = data.get(rank);
            if x.r < center {
                lower.push(rank);
            } else if x.l > center {
                upper.push(rank);
            } else {
                crossing.push(rank);
            }
        }

        let mut by_left: Vec<(f64, u32)> = crossing.iter().map(|&r| (data.get(r).l, r)).collect();
        let mut by_right: Vec<(f64, u32)> = crossing.iter().map(|&r| (data.get(r).r, r)).collect();
        by_left.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        by_right.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let index = self.nodes.len() as u32;
        self.nodes.push(Node {
            center,
            by_left,
            by_right,
            left: NONE,
            right: NONE,
        });
        let (left, lh) = self.build_node(data, lower, endpoints);
        let (right, rh) = self.build_node(data, upper, endpoints);
        let node = &mut self.nodes[index as usize];
        node.left = left;
        node.right = right;
        (index, 1 + lh.max(rh))
    }

    /// Reports the rank of every interval containing `s`, each exactly once.
    #[inline]
    pub(crate) fn stab(&self, s: f64, stats: &mut QueryStats, mut emit: impl FnMut(u32)) {
        if self.nodes.is_empty() {
            return;
        }
        let mut cur = 0u32;
        while cur != NONE {
            let node = &self.nodes[cur as usize];
            stats.nodes += 1;
            if s < node.center {
                // Every crossing interval has r >= center > s; only l decides.
                for &(l, rank) in &node.by_left {
                    stats.touched += 1;
                    if l > s {
                        break;
                    }
                    stats.stabbed += 1;
                    emit(rank);
                }
                cur = node.left;
            } else if s > node.center {
                for &(r, rank) in node.by_right.iter().rev() {
                    stats.touched += 1;
                    if r < s {
                        break;
                    }
                    stats.stabbed += 1;
                    emit(rank);
                }
                cur = node.right;
            } else {
                // Subtrees hold only intervals strictly left or right of s.
                for &(_, rank) in &node.by_left {
                    stats.touched += 1;
                    stats.stabbed += 1;
                    emit(rank);
                }
                break;
            }
        }
    }

    pub(crate) fn height(&self) -> usize {
        self.height
    }

    pub(crate) fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn entries(&self) -> usize {
        self.nodes.iter().map(|n| n.by_left.len() + n.by_right.len()).sum()
    }
}

/// An interval tree over a whole dataset.
#[derive(Debug, Clone)]
pub struct IntervalTree {
    data: SortedDataset,
    tree: CenterTree,
}

impl IntervalTree {
    pub fn build(data: &SortedDataset) -> Self {
        let ranks = (0..data.len() as u32).collect();
        Self {
            tree: CenterTree::build(data, ranks),
            data: data.clone(),
        }
    }

    /// Calls `emit` once for every interval containing `s`; returns how many.
    pub fn stab(&self, s: f64, mut emit: impl FnMut(&Interval)) -> usize {
        let mut stats = QueryStats::default();
        self.tree.stab(s, &mut stats, |r| emit(self.data.get(r)));
        stats.stabbed as usize
    }

    pub fn stab_with_stats(&self, s: f64, stats: &mut QueryStats, mut emit: impl FnMut(&Interval)) {
        self.tree.stab(s, stats, |r| emit(self.data.get(r)));
    }

    /// Number of levels; 0 for an empty tree.
    pub fn height(&self) -> usize {
        self.tree.height()
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn root(&self) -> Option<NodeRef<'_>> {
        (!self.tree.nodes.is_empty()).then_some(NodeRef {
            owner: self,
            index: 0,
        })
    }
}

impl TopKIndex for IntervalTree {
    fn name(&self) -> &'static str {
        "it"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        let mut acc = TopKAccumulator::new(q.k, self.data.len());
        self.tree.stab(q.s, stats, |r| acc.push(r));
        acc.drain_into(&self.data, out);
    }

    fn stored_copies(&self) -> usize {
        self.tree.entries()
    }
}

/// Read-only view of one tree node.
#[derive(Clone, Copy)]
pub struct NodeRef<'a> {
    owner: &'a IntervalTree,
    index: u32,
}

impl<'a> NodeRef<'a> {
    fn node(&self) -> &'a Node {
        &self.owner.tree.nodes[self.index as usize]
    }

    pub fn center(&self) -> f64 {
        self.node().center
    }

    /// Crossing intervals in ascending order of left endpoint.
    pub fn by_left(&self) -> impl Iterator<Item = &'a Interval> + 'a {
        let data = &self.owner.data;
        self.node().by_left.iter().map(move |&(_, r)| data.get(r))
    }

    /// Crossing intervals in ascending order of right endpoint.
    pub fn by_right(&self) -> impl Iterator<Item = &'a Interval> + 'a {
        let data = &self.owner.data;
        self.node().by_right.iter().map(move |&(_, r)| data.get(r))
    }

    pub fn left(&self) -> Option<NodeRef<'a>> {
        self.child(self.node().left)
    }

    pub fn right(&self) -> Option<NodeRef<'a>> {
        self.child(self.node().right)
    }

    fn child(&self, index: u32) -> Option<NodeRef<'a>> {
        (index != NONE).then_some(NodeRef {
            owner: self.owner,
            index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Dataset;
    use crate::scan::oracle_topk;
    use crate::testutil::{check_node_invariants, d1};

    fn ids<'a>(it: impl Iterator<Item = &'a Interval>) -> Vec<u64> {
        it.map(|x| x.id).collect()
    }

    fn stab_ids(tree: &IntervalTree, s: f64) -> Vec<u64> {
        let mut v = Vec::new();
        tree.stab(s, |x| v.push(x.id));
        v.sort_unstable();
        v
    }

    #[test]
    fn d1_structure() {
        let tree = IntervalTree::build(&d1().sorted());
        let root = tree.root().unwrap();
        assert_eq!(root.center(), 5.0);
        assert_eq!(ids(root.by_left()), vec![1, 4, 2]);
        assert_eq!(ids(root.by_right()), vec![1, 2, 4]);
        assert!(root.left().is_none());
        let right = root.right().unwrap();
        assert_eq!(ids(right.by_left()), vec![3]);
        check_node_invariants(&tree);
    }

    #[test]
    fn single_and_disjoint() {
        let d = Dataset::from_intervals(vec![Interval::new(1, 0.0, 1.0, 1.0)]).unwrap();
        let tree = IntervalTree::build(&d.sorted());
        let root = tree.root().unwrap();
        assert!(root.left().is_none() && root.right().is_none());

        let d = Dataset::from_intervals(vec![
            Interval::new(1, 0.0, 1.0, 1.0),
            Interval::new(2, 10.0, 11.0, 2.0),
        ])
        .unwrap();
        let tree = IntervalTree::build(&d.sorted());
        let root = tree.root().unwrap();
        assert_eq!(root.center(), 1.0);
        assert_eq!(ids(root.by_left()), vec![1]);
        assert_eq!(ids(root.right().unwrap().by_left()), vec![2]);
    }

    #[test]
    fn stab_fixture() {
        let tree = IntervalTree::build(&d1().sorted());
        assert_eq!(stab_ids(&tree, 4.0), vec![1, 2, 4]);
        assert_eq!(stab_ids(&tree, 5.0), vec![1, 2, 4]);
        assert_eq!(stab_ids(&tree, 9.5), Vec::<u64>::new());
        assert_eq!(tree.stab(9.5, |_| {}), 0);

        // s equal to the root center: one node visited.
        let mut stats = QueryStats::default();
        tree.stab_with_stats(5.0, &mut stats, |_| {});
        assert_eq!(stats.nodes, 1);
    }

    #[test]
    fn topk_fixture() {
        let tree = IntervalTree::build(&d1().sorted());
        assert_eq!(tree.topk(Query::new(4.0, 2)).ids(), vec![2, 4]);
        assert_eq!(tree.topk(Query::new(6.0, 1)).ids(), vec![2]);
        assert!(tree.topk(Query::new(-1.0, 5)).is_empty());
    }

    #[test]
    fn empty_dataset() {
        let d = Dataset::from_intervals(vec![]).unwrap();
        let tree = IntervalTree::build(&d.sorted());
        assert!(tree.root().is_none());
        assert_eq!(tree.height(), 0);
        assert!(tree.topk(Query::new(0.0, 3)).is_empty());
        assert!(oracle_topk(&d, Query::new(0.0, 3)).is_empty());
    }
}
