//! The query interface shared by every index, and the bounded top-k
//! accumulator used by the stab-then-select algorithms.

use std::collections::BinaryHeap;

use crate::interval::{Interval, Query, SortedDataset, TopKResult};

/// Per-query instrumentation counters. Counters accumulate across calls;
/// reset with `QueryStats::default()`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Tree nodes visited.
    pub nodes: u64,
    /// Interval entries read from index arrays, including the one that stops
    /// a scan.
    pub touched: u64,
    /// Stabbed intervals reported to the selection step.
    pub stabbed: u64,
    /// Interval trees consulted (interval forest only).
    pub trees: u64,
}

impl QueryStats {
    pub fn add(&mut self, other: &QueryStats) {
        self.nodes += other.nodes;
        self.touched += other.touched;
        self.stabbed += other.stabbed;
        self.trees += other.trees;
    }
}

/// An index answering top-k weighted stabbing queries.
pub trait TopKIndex {
    /// Short algorithm name, as used on the command line.
    fn name(&self) -> &'static str;

    /// Clears `out` and fills it with the result of `q`, in result order.
    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats);

    /// Number of interval entries held by the index structure.
    fn stored_copies(&self) -> usize;

    fn topk(&self, q: Query) -> TopKResult {
        let mut out = Vec::new();
        self.query_into(q, &mut out, &mut QueryStats::default());
        TopKResult::new(out)
    }
}

/// Keeps the `k` best ranks seen so far (smaller rank = better).
///
/// A max-heap on rank: the root is the worst retained entry and is evicted
/// when a better one arrives.
#[derive(Debug, Clone)]
pub struct TopKAccumulator {
    heap: BinaryHeap<u32>,
    k: usize,
}

impl TopKAccumulator {
    /// `capacity_hint` bounds the initial allocation (e.g. the dataset size)
    /// so a huge `k` does not allocate up front.
    pub fn new(k: usize, capacity_hint: usize) -> Self {
        Self {
            heap: BinaryHeap::with_capacity(k.min(capacity_hint)),
            k,
        }
    }

    #[inline]
    pub fn push(&mut self, rank: u32) {
        if self.heap.len() < self.k {
            self.heap.push(rank);
        } else if let Some(mut worst) = self.heap.peek_mut() {
            if rank < *worst {
                *worst = rank;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.heap.len() >= self.k
    }

    /// The worst rank currently retained.
    pub fn worst(&self) -> Option<u32> {
        self.heap.peek().copied()
    }

    /// Writes the retained intervals to `out` in result order.
    pub fn drain_into(self, data: &SortedDataset, out: &mut Vec<Interval>) {
        out.clear();
        out.extend(self.heap.into_sorted_vec().into_iter().map(|r| *data.get(r)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_smallest_ranks() {
        let mut acc = TopKAccumulator::new(3, 100);
        for r in [9, 4, 7, 1, 8, 2, 6] {
            acc.push(r);
        }
        assert!(acc.is_full());
        assert_eq!(acc.worst(), Some(4));
        assert_eq!(acc.heap.into_sorted_vec(), vec![1, 2, 4]);
    }

    #[test]
    fn under_full() {
        let mut acc = TopKAccumulator::new(5, 2);
        acc.push(3);
        acc.push(0);
        assert!(!acc.is_full());
        assert_eq!(acc.len(), 2);
    }
}
