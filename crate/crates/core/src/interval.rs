//! Weighted intervals, queries, results and validated datasets.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use rand::Rng;

use crate::error::{IngestError, IngestErrorKind};

/// A closed, weighted interval `[l, r]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub id: u64,
    pub l: f64,
    pub r: f64,
    pub w: f64,
}

impl Interval {
    pub const fn new(id: u64, l: f64, r: f64, w: f64) -> Self {
        Self { id, l, r, w }
    }

    /// `true` iff `l <= s <= r`.
    #[inline]
    pub fn is_stabbed_by(&self, s: f64) -> bool {
        self.l <= s && s <= self.r
    }
}

/// The result order: heavier intervals first, lower ids first among equal
/// weights.
///
/// Weights are finite for every interval admitted through [`Dataset`], which
/// makes this a strict total order on intervals with distinct ids.
#[inline]
pub fn compare(a: &Interval, b: &Interval) -> Ordering {
    b.w.partial_cmp(&a.w)
        .unwrap_or(Ordering::Equal)
        .then(a.id.cmp(&b.id))
}

/// A top-k weighted stabbing query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Query {
    pub s: f64,
    pub k: usize,
}

impl Query {
    /// Panics if `k == 0`; use [`Query::try_new`] for untrusted input.
    pub fn new(s: f64, k: usize) -> Self {
        Self::try_new(s, k).expect("query result size must be at least 1")
    }

    pub fn try_new(s: f64, k: usize) -> Option<Self> {
        (k >= 1).then_some(Self { s, k })
    }
}

/// Stabbed intervals in result order, at most `k` of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TopKResult {
    items: Vec<Interval>,
}

impl TopKResult {
    pub fn new(items: Vec<Interval>) -> Self {
        Self { items }
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    pub fn ids(&self) -> Vec<u64> {
        self.items.iter().map(|x| x.id).collect()
    }

    pub fn into_vec(self) -> Vec<Interval> {
        self.items
    }
}

impl Deref for TopKResult {
    type Target = [Interval];

    fn deref(&self) -> &[Interval] {
        &self.items
    }
}

/// Whether the query asks for the heaviest or the lightest intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightOrder {
    #[default]
    Max,
    Min,
}

impl WeightOrder {
    /// Maps a weight between its stored and its presented form. The mapping
    /// is an involution, so the same call converts in both directions.
    #[inline]
    pub fn present(self, w: f64) -> f64 {
        match self {
            WeightOrder::Max => w,
            WeightOrder::Min => -w,
        }
    }
}

impl fmt::Display for WeightOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightOrder::Max => "max",
            WeightOrder::Min => "min",
        })
    }
}

impl std::str::FromStr for WeightOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(WeightOrder::Max),
            "min" => Ok(WeightOrder::Min),
            other => Err(format!("unknown order {other:?}, expected max or min")),
        }
    }
}

/// A validated, immutable set of intervals.
///
/// When built with [`WeightOrder::Min`] every weight is stored negated, so
/// the indexes only ever answer max-weight queries.
#[derive(Debug, Clone)]
pub struct Dataset {
    intervals: Vec<Interval>,
    order: WeightOrder,
}

impl Dataset {
    /// Validates raw `(id, l, r, w)` records.
    pub fn ingest<I>(records: I, order: WeightOrder) -> Result<Self, IngestError>
    where
        I: IntoIterator<Item = (u64, f64, f64, f64)>,
    {
        let mut seen = HashSet::new();
        let mut intervals = Vec::new();
        for (index, (id, l, r, w)) in records.into_iter().enumerate() {
            let fail = |kind| Err(IngestError { index, id, kind });
            if !l.is_finite() {
                return fail(IngestErrorKind::NonFinite("l"));
            }
            if !r.is_finite() {
                return fail(IngestErrorKind::NonFinite("r"));
            }
            if !w.is_finite() {
                return fail(IngestErrorKind::NonFinite("w"));
            }
            if l > r {
                return fail(IngestErrorKind::Inverted);
            }
            if !seen.insert(id) {
                return fail(IngestErrorKind::DuplicateId);
            }
            if intervals.len() == u32::MAX as usize {
                return fail(IngestErrorKind::TooMany);
            }
            intervals.push(Interval::new(id, l, r, order.present(w)));
        }
        Ok(Self { intervals, order })
    }

    /// Validates already-constructed intervals, max order.
    pub fn from_intervals(intervals: Vec<Interval>) -> Result<Self, IngestError> {
        Self::ingest(
            intervals.into_iter().map(|x| (x.id, x.l, x.r, x.w)),
            WeightOrder::Max,
        )
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn order(&self) -> WeightOrder {
        self.order
    }

    /// `[min l, max r]`, or `None` for an empty dataset.
    pub fn domain(&self) -> Option<(f64, f64)> {
        let first = self.intervals.first()?;
        Some(
            self.intervals
                .iter()
                .fold((first.l, first.r), |(lo, hi), x| (lo.min(x.l), hi.max(x.r))),
        )
    }

    /// Keeps each interval independently with probability `rate`.
    pub fn sample<R: Rng + ?Sized>(&self, rate: f64, rng: &mut R) -> Self {
        let intervals = if rate >= 1.0 {
            self.intervals.clone()
        } else {
            self.intervals
                .iter()
                .filter(|_| rng.random::<f64>() < rate)
                .copied()
                .collect()
        };
        Self {
            intervals,
            order: self.order,
        }
    }

    /// Drops the interval with the given id, if present.
    pub fn without(&self, id: u64) -> Self {
        Self {
            intervals: self.intervals.iter().filter(|x| x.id != id).copied().collect(),
            order: self.order,
        }
    }

    pub fn sorted(&self) -> SortedDataset {
        SortedDataset::new(self)
    }
}

/// The intervals of a dataset sorted by [`compare`].
///
/// The position of an interval in this order is its *rank*. Indexes store
/// `u32` ranks, so comparing two ranks is the same as comparing the
/// intervals. Cloning is cheap; the storage is shared.
#[derive(Debug, Clone)]
pub struct SortedDataset {
    items: Arc<[Interval]>,
}

impl SortedDataset {
    pub fn new(dataset: &Dataset) -> Self {
        let mut items = dataset.intervals().to_vec();
        items.sort_unstable_by(compare);
        Self {
            items: items.into(),
        }
    }

    #[inline]
    pub fn get(&self, rank: u32) -> &Interval {
        &self.items[rank as usize]
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(id: u64, w: f64) -> Interval {
        Interval::new(id, 0.0, 1.0, w)
    }

    #[test]
    fn compare_weight_then_id() {
        assert_eq!(compare(&iv(2, 20.0), &iv(4, 15.0)), Ordering::Less);
        assert_eq!(compare(&iv(1, 10.0), &iv(3, 10.0)), Ordering::Less);
        assert_eq!(compare(&iv(7, 5.0), &iv(7, 5.0)), Ordering::Equal);
        assert_eq!(compare(&iv(4, 15.0), &iv(2, 20.0)), Ordering::Greater);
    }

    #[test]
    fn ingest_accepts_single_record() {
        let d = Dataset::ingest([(1, 1.0, 5.0, 10.0)], WeightOrder::Max).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.domain(), Some((1.0, 5.0)));
    }

    #[test]
    fn ingest_rejects_inverted() {
        let err = Dataset::ingest([(1, 5.0, 1.0, 10.0)], WeightOrder::Max).unwrap_err();
        assert_eq!(err.to_string(), "l > r at id 1");
        assert_eq!(err.index, 0);
    }

    #[test]
    fn ingest_rejects_non_finite_and_duplicates() {
        let err = Dataset::ingest(
            [(1, 0.0, 1.0, 1.0), (2, 0.0, f64::INFINITY, 1.0)],
            WeightOrder::Max,
        )
        .unwrap_err();
        assert_eq!(err.index, 1);
        assert!(err.to_string().contains("non-finite r"));

        let err = Dataset::ingest([(1, 0.0, 1.0, f64::NAN)], WeightOrder::Max).unwrap_err();
        assert!(err.to_string().contains("non-finite w"));

        let err = Dataset::ingest(
            [(3, 0.0, 1.0, 1.0), (3, 0.0, 2.0, 1.0)],
            WeightOrder::Max,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "duplicate id 3");
    }

    #[test]
    fn min_order_negates_weights() {
        let d = Dataset::ingest([(1, 0.0, 1.0, 3.0), (2, 0.0, 1.0, 7.0)], WeightOrder::Min)
            .unwrap();
        let sorted = d.sorted();
        assert_eq!(sorted.get(0).id, 1);
        assert_eq!(d.order().present(sorted.get(0).w), 3.0);
    }

    #[test]
    fn degenerate_interval_stabbed_only_at_its_point() {
        let x = Interval::new(1, 2.0, 2.0, 1.0);
        assert!(x.is_stabbed_by(2.0));
        assert!(!x.is_stabbed_by(2.0 + f64::EPSILON * 4.0));
        assert!(!x.is_stabbed_by(1.999));
    }

    #[test]
    fn zero_k_rejected() {
        assert!(Query::try_new(1.0, 0).is_none());
        assert_eq!(Query::try_new(1.0, 3), Some(Query { s: 1.0, k: 3 }));
    }
}
