//! Interval forest: the weight-sorted dataset split into `ceil(sqrt(n))`
//! consecutive chunks, one interval tree per chunk.
//!
//! Every interval in chunk `i` outranks every interval in chunk `i + 1`, so
//! once the trees consulted so far have produced `k` stabbed intervals the
//! remaining trees cannot improve the result.

use std::ops::Range;

use crate::index::{QueryStats, TopKAccumulator, TopKIndex};
use crate::interval::{Interval, Query, SortedDataset};
use crate::interval_tree::CenterTree;

/// Weight range and rank range of one chunk.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkBounds {
    pub ranks: Range<u32>,
    pub max_weight: f64,
    pub min_weight: f64,
}

#[derive(Debug, Clone)]
pub struct IntervalForest {
    data: SortedDataset,
    trees: Vec<CenterTree>,
    bounds: Vec<ChunkBounds>,
}

/// Per-query trace: the number of stabbed intervals each consulted tree
/// reported, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForestTrace {
    pub per_tree_stabbed: Vec<u64>,
}

impl IntervalForest {
    pub fn build(data: &SortedDataset) -> Self {
        let n = data.len();
        let mut trees = Vec::new();
        let mut bounds = Vec::new();
        if n > 0 {
            let root = n.isqrt();
            let p = if root * root < n { root + 1 } else { root };
            let chunk = n.div_ceil(p);
            let mut start = 0usize;
            while start < n {
                let end = (start + chunk).min(n);
                let ranks: Vec<u32> = (start as u32..end as u32).collect();
                trees.push(CenterTree::build(data, ranks));
                bounds.push(ChunkBounds {
                    ranks: start as u32..end as u32,
                    max_weight: data.get(start as u32).w,
                    min_weight: data.get(end as u32 - 1).w,
                });
                start = end;
            }
        }
        Self {
            data: data.clone(),
            trees,
            bounds,
        }
    }

    /// Number of trees `p`.
    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    pub fn chunk_bounds(&self) -> &[ChunkBounds] {
        &self.bounds
    }

    pub fn tree_heights(&self) -> Vec<usize> {
        self.trees.iter().map(CenterTree::height).collect()
    }

    /// Like [`TopKIndex::query_into`], also recording per-tree stab counts.
    pub fn query_traced(
        &self,
        q: Query,
        out: &mut Vec<Interval>,
        stats: &mut QueryStats,
        trace: &mut ForestTrace,
    ) {
        trace.per_tree_stabbed.clear();
        self.run(q, out, stats, |stabbed| trace.per_tree_stabbed.push(stabbed));
    }

    #[inline]
    fn run(
        &self,
        q: Query,
        out: &mut Vec<Interval>,
        stats: &mut QueryStats,
        mut after_tree: impl FnMut(u64),
    ) {
        let mut acc = TopKAccumulator::new(q.k, self.data.len());
        for tree in &self.trees {
            stats.trees += 1;
            let before = stats.stabbed;
            tree.stab(q.s, stats, |r| acc.push(r));
            after_tree(stats.stabbed - before);
            if acc.is_full() {
                break;
            }
        }
        acc.drain_into(&self.data, out);
    }
}

impl TopKIndex for IntervalForest {
    fn name(&self) -> &'static str {
        "if"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        self.run(q, out, stats, |_| {});
    }

    fn stored_copies(&self) -> usize {
        self.trees.iter().map(CenterTree::entries).sum()
    }
}
