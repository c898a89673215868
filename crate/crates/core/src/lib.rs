//! Exact top-k weighted stabbing queries over static interval data.
//!
//! Given weighted closed intervals, a query value `s` and a result size `k`,
//! find the `k` heaviest intervals containing `s`. Results are ordered by
//! weight descending, then id ascending, so every algorithm returns exactly
//! the same sequence.
//!
//! | index | query time |
//! |---|---|
//! | [`SequentialScan`] | stops at the k-th stabbed interval of the weight-sorted data |
//! | [`IntervalTree`] | `O(log n + m log k)` for `m` stabbed intervals |
//! | [`IntervalForest`] | `O(sqrt(n) log n + k)` |
//! | [`SegmentTree`] | `O(log n + m log k)` |
//! | [`SortedSegmentTree`] | `O(k log n)` |
//! | [`PathArrayTree`] | `O(log n + k)` |
//!
//! ```
//! use topk_stab::{Dataset, Interval, PathArrayTree, Query, TopKIndex};
//!
//! let data = Dataset::from_intervals(vec![
//!     Interval::new(1, 1.0, 5.0, 10.0),
//!     Interval::new(2, 3.0, 7.0, 20.0),
//!     Interval::new(3, 6.0, 9.0, 5.0),
//! ])
//! .unwrap();
//! let index = PathArrayTree::build(&data.sorted());
//! assert_eq!(index.topk(Query::new(4.0, 1)).ids(), vec![2]);
//! ```

pub mod error;
pub mod harness;
pub mod index;
pub mod interval;
pub mod interval_forest;
pub mod interval_tree;
pub mod scan;
pub mod segment_tree;

#[cfg(test)]
mod testutil;

pub use error::{HarnessError, IngestError};
pub use index::{QueryStats, TopKAccumulator, TopKIndex};
pub use interval::{compare, Dataset, Interval, Query, SortedDataset, TopKResult, WeightOrder};
pub use interval_forest::IntervalForest;
pub use interval_tree::IntervalTree;
pub use scan::{oracle_topk, SequentialScan};
pub use segment_tree::{PathArrayTree, SegmentTree, SortedSegmentTree};
