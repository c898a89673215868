//! Segment tree over elementary intervals, and its two top-k variants.
//!
//! Every interval is stored at its canonical nodes: the nodes whose range it
//! covers while not covering the parent's range. A stabbing query walks the
//! single root-to-leaf path for `s`; the canonical sets along that path are
//! exactly the intervals containing `s`, and no interval appears twice on one
//! path.
//!
//! Intervals are inserted in rank order, so each canonical set is already
//! sorted by the result order. [`SegmentTree`] ignores that and selects with
//! a bounded heap; [`SortedSegmentTree`] merges the sorted path lists; and
//! [`PathArrayTree`] precomputes the merged list for every leaf.

mod grid;
mod path_array;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Bound;

pub use grid::ElementaryGrid;
pub use path_array::PathArrayTree;

use crate::index::{QueryStats, TopKAccumulator, TopKIndex};
use crate::interval::{Interval, Query, SortedDataset};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct SegNode {
    /// Leaves `lo..hi` lie under this node.
    pub(crate) lo: u32,
    pub(crate) hi: u32,
    pub(crate) split: f64,
    pub(crate) split_closed: bool,
    pub(crate) left: u32,
    pub(crate) right: u32,
}

impl SegNode {
    #[inline]
    pub(crate) fn is_leaf(&self) -> bool {
        self.left == NONE
    }

    #[inline]
    pub(crate) fn child_for(&self, s: f64) -> u32 {
        let go_left = if self.split_closed {
            s <= self.split
        } else {
            s < self.split
        };
        if go_left {
            self.left
        } else {
            self.right
        }
    }
}

/// Balanced node skeleton over the grid's leaves, in preorder. Returns the
/// nodes and the number of levels.
pub(crate) fn build_skeleton(grid: &ElementaryGrid) -> (Vec<SegNode>, usize) {
    fn rec(grid: &ElementaryGrid, nodes: &mut Vec<SegNode>, lo: u32, hi: u32) -> (u32, usize) {
        let index = nodes.len() as u32;
        nodes.push(SegNode {
            lo,
            hi,
            split: 0.0,
            split_closed: false,
            left: NONE,
            right: NONE,
        });
        if hi - lo == 1 {
            return (index, 1);
        }
        let mid = lo + (hi - lo) / 2;
        let (split, closed) = grid.split_at(mid);
        let (left, lh) = rec(grid, nodes, lo, mid);
        let (right, rh) = rec(grid, nodes, mid, hi);
        let node = &mut nodes[index as usize];
        node.split = split;
        node.split_closed = closed;
        node.left = left;
        node.right = right;
        (index, 1 + lh.max(rh))
    }

    let mut nodes = Vec::with_capacity(2 * grid.leaf_count() as usize);
    let (_, height) = rec(grid, &mut nodes, 0, grid.leaf_count());
    (nodes, height)
}

/// Segment tree with canonical interval sets.
#[derive(Debug, Clone)]
pub struct SegmentTree {
    pub(crate) data: SortedDataset,
    pub(crate) grid: ElementaryGrid,
    pub(crate) nodes: Vec<SegNode>,
    pub(crate) canonical: Vec<Vec<u32>>,
    pub(crate) height: usize,
}

impl SegmentTree {
    pub fn build(data: &SortedDataset) -> Self {
        let grid = ElementaryGrid::new(data.as_slice().iter().flat_map(|x| [x.l, x.r]));
        let (nodes, height) = build_skeleton(&grid);
        let mut canonical = vec![Vec::new(); nodes.len()];

        let mut stack = Vec::with_capacity(2 * height);
        for (rank, x) in data.as_slice().iter().enumerate() {
            let a = grid.point_leaf(x.l);
            let b = grid.point_leaf(x.r);
            stack.push(0u32);
            while let Some(i) = stack.pop() {
                let node = &nodes[i as usize];
                if a <= node.lo && node.hi - 1 <= b {
                    canonical[i as usize].push(rank as u32);
                    continue;
                }
                let mid = nodes[node.left as usize].hi;
                if b >= mid {
                    stack.push(node.right);
                }
                if a < mid {
                    stack.push(node.left);
                }
            }
        }

        Self {
            data: data.clone(),
            grid,
            nodes,
            canonical,
            height,
        }
    }

    pub fn grid(&self) -> &ElementaryGrid {
        &self.grid
    }

    /// Number of levels, root and leaf included.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn leaf_count(&self) -> u32 {
        self.grid.leaf_count()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Total entries across all canonical sets.
    pub fn canonical_copies(&self) -> usize {
        self.canonical.iter().map(Vec::len).sum()
    }

    pub fn root(&self) -> NodeRef<'_> {
        NodeRef {
            tree: self,
            index: 0,
        }
    }

    /// Walks to the leaf containing `s`, emitting the canonical set of every
    /// node on the way. Returns the leaf index.
    pub fn stab(&self, s: f64, mut emit: impl FnMut(&Interval)) -> u32 {
        self.stab_ranks(s, &mut QueryStats::default(), |r| emit(self.data.get(r)))
    }

    #[inline]
    fn stab_ranks(&self, s: f64, stats: &mut QueryStats, mut emit: impl FnMut(u32)) -> u32 {
        let mut cur = 0u32;
        loop {
            let node = &self.nodes[cur as usize];
            stats.nodes += 1;
            for &rank in &self.canonical[cur as usize] {
                stats.touched += 1;
                stats.stabbed += 1;
                emit(rank);
            }
            if node.is_leaf() {
                return node.lo;
            }
            cur = node.child_for(s);
        }
    }

    /// Canonical lists along the path for `s`, root first.
    #[inline]
    fn path_lists<'a>(&'a self, s: f64, stats: &mut QueryStats, lists: &mut Vec<&'a [u32]>) {
        let mut cur = 0u32;
        loop {
            let node = &self.nodes[cur as usize];
            stats.nodes += 1;
            let list = &self.canonical[cur as usize];
            if !list.is_empty() {
                lists.push(list);
            }
            if node.is_leaf() {
                return;
            }
            cur = node.child_for(s);
        }
    }

    /// Converts into the sorted-list merging variant.
    pub fn into_sorted(self) -> SortedSegmentTree {
        SortedSegmentTree { tree: self }
    }

    /// Precomputes per-leaf path arrays, dropping the canonical sets.
    pub fn into_path_arrays(self) -> PathArrayTree {
        PathArrayTree::from_segment_tree(self)
    }
}

impl TopKIndex for SegmentTree {
    fn name(&self) -> &'static str {
        "st"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        let mut acc = TopKAccumulator::new(q.k, self.data.len());
        self.stab_ranks(q.s, stats, |r| acc.push(r));
        acc.drain_into(&self.data, out);
    }

    fn stored_copies(&self) -> usize {
        self.canonical_copies()
    }
}

/// Segment tree whose top-k query merges the weight-sorted canonical lists
/// on the path, reading at most `k` entries from each.
#[derive(Debug, Clone)]
pub struct SortedSegmentTree {
    tree: SegmentTree,
}

impl SortedSegmentTree {
    pub fn build(data: &SortedDataset) -> Self {
        SegmentTree::build(data).into_sorted()
    }

    pub fn tree(&self) -> &SegmentTree {
        &self.tree
    }
}

impl TopKIndex for SortedSegmentTree {
    fn name(&self) -> &'static str {
        "sst"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        out.clear();
        let mut lists = Vec::with_capacity(self.tree.height);
        self.tree.path_lists(q.s, stats, &mut lists);

        // Heads of every list; (rank, list, position).
        let mut heads: BinaryHeap<Reverse<(u32, u32, u32)>> = lists
            .iter()
            .enumerate()
            .map(|(i, list)| Reverse((list[0], i as u32, 0)))
            .collect();
        stats.touched += heads.len() as u64;

        while let Some(Reverse((rank, list, pos))) = heads.pop() {
            out.push(*self.tree.data.get(rank));
            stats.stabbed += 1;
            if out.len() == q.k {
                break;
            }
            let next = pos as usize + 1;
            if let Some(&r) = lists[list as usize].get(next) {
                stats.touched += 1;
                heads.push(Reverse((r, list, next as u32)));
            }
        }
    }

    fn stored_copies(&self) -> usize {
        self.tree.canonical_copies()
    }
}

/// Read-only view of a segment tree node.
#[derive(Clone, Copy)]
pub struct NodeRef<'a> {
    tree: &'a SegmentTree,
    index: u32,
}

impl<'a> NodeRef<'a> {
    fn node(&self) -> &'a SegNode {
        &self.tree.nodes[self.index as usize]
    }

    /// Leaf indices below this node.
    pub fn leaves(&self) -> std::ops::Range<u32> {
        self.node().lo..self.node().hi
    }

    pub fn range(&self) -> (Bound<f64>, Bound<f64>) {
        self.tree.grid.span(self.node().lo, self.node().hi)
    }

    pub fn canonical(&self) -> impl Iterator<Item = &'a Interval> + 'a {
        let data = &self.tree.data;
        self.tree.canonical[self.index as usize]
            .iter()
            .map(move |&r| data.get(r))
    }

    pub fn is_leaf(&self) -> bool {
        self.node().is_leaf()
    }

    pub fn children(&self) -> Option<(NodeRef<'a>, NodeRef<'a>)> {
        let node = self.node();
        (!node.is_leaf()).then_some((
            NodeRef {
                tree: self.tree,
                index: node.left,
            },
            NodeRef {
                tree: self.tree,
                index: node.right,
            },
        ))
    }
}
