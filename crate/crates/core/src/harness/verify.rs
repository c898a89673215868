//! Runs every query through every algorithm and compares against the oracle.

use std::fmt::Write as _;

use super::io::Workload;
use super::{Algorithm, BuiltIndex};
use crate::index::QueryStats;
use crate::interval::{Dataset, Query};
use crate::scan::oracle_topk;

/// Test hook: build one algorithm over the dataset minus one interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub algorithm: Algorithm,
    pub drop_id: u64,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub algorithms: Option<Vec<Algorithm>>,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub algorithm: Algorithm,
    /// Zero-based index into the workload.
    pub query_index: usize,
    pub query: Query,
    pub expected: Vec<u64>,
    pub got: Vec<u64>,
}

#[derive(Debug, Clone, Default)]
pub struct AlgorithmTally {
    pub queries: usize,
    pub mismatches: usize,
    pub bound_violations: usize,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub per_algorithm: Vec<(Algorithm, AlgorithmTally)>,
    /// First mismatch in (query, algorithm) order.
    pub first_divergence: Option<Divergence>,
    pub first_bound_violation: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.per_algorithm
            .iter()
            .all(|(_, t)| t.mismatches == 0 && t.bound_violations == 0)
    }

    /// Deterministic CSV summary, one row per algorithm.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("algo,queries,mismatches,bound_violations\n");
        for (algo, t) in &self.per_algorithm {
            let _ = writeln!(out, "{algo},{},{},{}", t.queries, t.mismatches, t.bound_violations);
        }
        out
    }
}

impl std::fmt::Display for Divergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "algorithm {} diverges on query #{} (s={}, k={}): expected ids {:?}, got {:?}",
            self.algorithm, self.query_index, self.query.s, self.query.k, self.expected, self.got
        )
    }
}

pub fn verify(dataset: &Dataset, workload: &Workload, opts: &VerifyOptions) -> VerifyReport {
    let algorithms = opts.algorithms.clone().unwrap_or_else(|| Algorithm::ALL.to_vec());
    let sorted = dataset.sorted();
    let indexes: Vec<BuiltIndex> = algorithms
        .iter()
        .map(|&a| match opts.fault {
            Some(f) if f.algorithm == a => a.build(&dataset.without(f.drop_id).sorted()),
            _ => a.build(&sorted),
        })
        .collect();

    let mut report = VerifyReport {
        per_algorithm: algorithms.iter().map(|&a| (a, AlgorithmTally::default())).collect(),
        ..Default::default()
    };
    let mut out = Vec::new();
    for (qi, &q) in workload.queries.iter().enumerate() {
        let expected = oracle_topk(dataset, q).ids();
        for (index, (_, tally)) in indexes.iter().zip(report.per_algorithm.iter_mut()) {
            let mut stats = QueryStats::default();
            index.as_index().query_into(q, &mut out, &mut stats);
            tally.queries += 1;
            let got: Vec<u64> = out.iter().map(|x| x.id).collect();
            if got != expected {
                tally.mismatches += 1;
                report.first_divergence.get_or_insert_with(|| Divergence {
                    algorithm: index.algorithm(),
                    query_index: qi,
                    query: q,
                    expected: expected.clone(),
                    got,
                });
            }
            if let Some(v) = index.bound_violation(q, &stats) {
                tally.bound_violations += 1;
                report
                    .first_bound_violation
                    .get_or_insert_with(|| format!("query #{qi}: {v}"));
            }
        }
    }
    report
}
