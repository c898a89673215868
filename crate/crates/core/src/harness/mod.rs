//! Dataset and workload files, generators, cross-algorithm verification and
//! latency benchmarking.

mod bench;
mod generate;
mod io;
mod verify;

use std::fmt;
use std::str::FromStr;

pub use bench::{bench, measure, report_csv, BenchConfig, BenchRow, Measurement, REPORT_HEADER};
pub use generate::{generate_dataset, generate_queries, DistSpec, GenConfig};
pub use io::{
    parse_dataset, parse_workload, read_dataset, read_workload, write_dataset, write_workload,
    Workload,
};
pub use verify::{verify, AlgorithmTally, Divergence, Fault, VerifyOptions, VerifyReport};

use crate::index::{QueryStats, TopKIndex};
use crate::interval::{Query, SortedDataset};
use crate::interval_forest::IntervalForest;
use crate::interval_tree::IntervalTree;
use crate::scan::SequentialScan;
use crate::segment_tree::{PathArrayTree, SegmentTree, SortedSegmentTree};

/// The selectable query algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Sequential scan over the weight-sorted dataset.
    Ss,
    /// Interval tree, stab everything, heap-select.
    It,
    /// Interval forest with early termination.
    If,
    /// Segment tree, stab everything, heap-select.
    St,
    /// Segment tree merging weight-sorted canonical lists.
    Sst,
    /// Segment tree with per-leaf path arrays.
    Stpsa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ss,
        Algorithm::It,
        Algorithm::If,
        Algorithm::St,
        Algorithm::Sst,
        Algorithm::Stpsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ss => "ss",
            Algorithm::It => "it",
            Algorithm::If => "if",
            Algorithm::St => "st",
            Algorithm::Sst => "sst",
            Algorithm::Stpsa => "stpsa",
        }
    }

    pub fn build(self, data: &SortedDataset) -> BuiltIndex {
        match self {
            Algorithm::Ss => BuiltIndex::Ss(SequentialScan::new(data.clone())),
            Algorithm::It => BuiltIndex::It(IntervalTree::build(data)),
            Algorithm::If => BuiltIndex::If(IntervalForest::build(data)),
            Algorithm::St => BuiltIndex::St(SegmentTree::build(data)),
            Algorithm::Sst => BuiltIndex::Sst(SortedSegmentTree::build(data)),
            Algorithm::Stpsa => BuiltIndex::Stpsa(PathArrayTree::build(data)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm {s:?}; valid names: {}", names.join(", "))
            })
    }
}

/// A built index of any algorithm.
pub enum BuiltIndex {
    Ss(SequentialScan),
    It(IntervalTree),
    If(IntervalForest),
    St(SegmentTree),
    Sst(SortedSegmentTree),
    Stpsa(PathArrayTree),
}

impl BuiltIndex {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            BuiltIndex::Ss(_) => Algorithm::Ss,
            BuiltIndex::It(_) => Algorithm::It,
            BuiltIndex::If(_) => Algorithm::If,
            BuiltIndex::St(_) => Algorithm::St,
            BuiltIndex::Sst(_) => Algorithm::Sst,
            BuiltIndex::Stpsa(_) => Algorithm::Stpsa,
        }
    }

    pub fn as_index(&self) -> &dyn TopKIndex {
        match self {
            BuiltIndex::Ss(x) => x,
            BuiltIndex::It(x) => x,
            BuiltIndex::If(x) => x,
            BuiltIndex::St(x) => x,
            BuiltIndex::Sst(x) => x,
            BuiltIndex::Stpsa(x) => x,
        }
    }

    /// Checks one query's counters against the algorithm's access bounds.
    pub fn bound_violation(&self, q: Query, stats: &QueryStats) -> Option<String> {
        let fail = |what: String| Some(format!("{}: {what}", self.algorithm()));
        match self {
            BuiltIndex::Ss(_) => None,
            BuiltIndex::It(t) => {
                if stats.nodes as usize > t.height() {
                    fail(format!("visited {} nodes, height {}", stats.nodes, t.height()))
                } else if stats.touched > stats.stabbed + stats.nodes {
                    fail(format!(
                        "touched {} entries for {} stabbed over {} nodes",
                        stats.touched, stats.stabbed, stats.nodes
                    ))
                } else {
                    None
                }
            }
            BuiltIndex::If(f) => (stats.trees as usize > f.tree_count())
                .then(|| format!("if: visited {} trees of {}", stats.trees, f.tree_count())),
            BuiltIndex::St(t) => (stats.nodes as usize > t.height())
                .then(|| format!("st: visited {} nodes, height {}", stats.nodes, t.height())),
            BuiltIndex::Sst(t) => {
                let h = t.tree().height();
                if stats.nodes as usize > h {
                    fail(format!("visited {} nodes, height {h}", stats.nodes))
                } else if stats.touched > (q.k as u64).saturating_mul(stats.nodes) {
                    fail(format!("touched {} entries, k={} nodes={}", stats.touched, q.k, stats.nodes))
                } else {
                    None
                }
            }
            BuiltIndex::Stpsa(t) => {
                if stats.nodes as usize > t.height() {
                    fail(format!("visited {} nodes, height {}", stats.nodes, t.height()))
                } else if stats.touched > q.k as u64 {
                    fail(format!("touched {} intervals, k={}", stats.touched, q.k))
                } else {
                    None
                }
            }
        }
    }
}
