//! The brute-force oracle and the weight-sorted sequential scan.

use crate::index::{QueryStats, TopKIndex};
use crate::interval::{compare, Dataset, Interval, Query, SortedDataset, TopKResult};

/// Reference answer: filter every stabbed interval, sort, truncate.
pub fn oracle_topk(dataset: &Dataset, q: Query) -> TopKResult {
    oracle_topk_slice(dataset.intervals(), q)
}

pub fn oracle_topk_slice(intervals: &[Interval], q: Query) -> TopKResult {
    let mut stabbed: Vec<Interval> = intervals
        .iter()
        .filter(|x| x.is_stabbed_by(q.s))
        .copied()
        .collect();
    stabbed.sort_by(compare);
    stabbed.truncate(q.k);
    TopKResult::new(stabbed)
}

/// Scans the weight-sorted dataset and stops at the `k`-th stabbed interval.
#[derive(Debug, Clone)]
pub struct SequentialScan {
    data: SortedDataset,
}

impl SequentialScan {
    pub fn new(data: SortedDataset) -> Self {
        Self { data }
    }
}

impl TopKIndex for SequentialScan {
    fn name(&self) -> &'static str {
        "ss"
    }

    fn query_into(&self, q: Query, out: &mut Vec<Interval>, stats: &mut QueryStats) {
        out.clear();
        for x in self.data.as_slice() {
            stats.touched += 1;
            if x.is_stabbed_by(q.s) {
                stats.stabbed += 1;
                out.push(*x);
                if out.len() == q.k {
                    break;
                }
            }
        }
    }

    fn stored_copies(&self) -> usize {
        self.data.len()
    }
}
