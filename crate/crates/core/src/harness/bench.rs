//! Build and query-latency measurement.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::io::Workload;
use super::{Algorithm, BuiltIndex};
use crate::error::{HarnessError, Result};
use crate::index::QueryStats;
use crate::interval::{Dataset, Query};

pub const REPORT_HEADER: &str =
    "algo,n,k,build_ms,copies,mean_us,p50_us,p99_us,nodes_mean,touches_mean,trees_mean";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    /// Bernoulli sampling rate in `(0, 1]`.
    pub sample_rate: f64,
    pub seed: u64,
    /// Replaces every query's `k`.
    pub k: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            sample_rate: 1.0,
            seed: 0,
            k: None,
        }
    }
}

/// Latency and counter summary of one timed pass.
#[derive(Debug, Clone, Default)]
pub struct Measurement {
    pub queries: usize,
    pub mean_us: f64,
    pub p50_us: f64,
    pub p99_us: f64,
    pub nodes_mean: f64,
    pub touches_mean: f64,
    pub trees_mean: f64,
    pub bound_violations: usize,
}

/// One warm-up pass, then a timed pass with per-query latencies.
pub fn measure(index: &BuiltIndex, queries: &[Query]) -> Measurement {
    let ix = index.as_index();
    let mut out = Vec::new();
    let mut scratch = QueryStats::default();
    for &q in queries {
        ix.query_into(q, &mut out, &mut scratch);
        black_box(&out);
    }

    let mut latencies = Vec::with_capacity(queries.len());
    let mut total = QueryStats::default();
    let mut violations = 0;
    for &q in queries {
        let mut stats = QueryStats::default();
        let start = Instant::now();
        ix.query_into(q, &mut out, &mut stats);
        black_box(&out);
        latencies.push(start.elapsed().as_secs_f64() * 1e6);
        if index.bound_violation(q, &stats).is_some() {
            violations += 1;
        }
        total.add(&stats);
    }

    let count = queries.len().max(1) as f64;
    latencies.sort_unstable_by(f64::total_cmp);
    Measurement {
        queries: queries.len(),
        mean_us: latencies.iter().sum::<f64>() / count,
        p50_us: percentile(&latencies, 0.50),
        p99_us: percentile(&latencies, 0.99),
        nodes_mean: total.nodes as f64 / count,
        touches_mean: total.touched as f64 / count,
        trees_mean: total.trees as f64 / count,
        bound_violations: violations,
    }
}

/// Nearest-rank percentile of sorted samples.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (p * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k: Option<usize>,
    pub build_ms: f64,
    pub copies: usize,
    pub measurement: Measurement,
}

impl BenchRow {
    pub fn to_csv_line(&self) -> String {
        let m = &self.measurement;
        let k = self.k.map_or_else(|| "mixed".to_string(), |k| k.to_string());
        let trees = if self.algorithm == Algorithm::If {
            format!("{:.3}", m.trees_mean)
        } else {
            String::new()
        };
        format!(
            "{},{},{k},{:.3},{},{:.3},{:.3},{:.3},{:.3},{:.3},{trees}",
            self.algorithm, self.n, self.build_ms, self.copies, m.mean_us, m.p50_us, m.p99_us, m.nodes_mean, m.touches_mean,
        )
    }
}

pub fn report_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv_line());
    }
    out
}

/// Samples the dataset, then builds and measures each algorithm in turn.
/// Only one index is alive at a time.
pub fn bench(dataset: &Dataset, workload: &Workload, cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.algorithms.is_empty() {
        return Err(HarnessError::Usage("no algorithms selected".into()));
    }
    if !(cfg.sample_rate > 0.0 && cfg.sample_rate <= 1.0) {
        return Err(HarnessError::Usage(format!(
            "sample rate must be in (0, 1], got {}",
            cfg.sample_rate
        )));
    }
    if cfg.k == Some(0) {
        return Err(HarnessError::Usage("k must be at least 1".into()));
    }
    let sample = dataset.sample(cfg.sample_rate, &mut ChaCha8Rng::seed_from_u64(cfg.seed));
    if sample.is_empty() {
        return Err(HarnessError::Usage(format!(
            "sampling at rate {} left no intervals",
            cfg.sample_rate
        )));
    }
    let queries: Vec<Query> = match cfg.k {
        Some(k) => workload.queries.iter().map(|q| Query::new(q.s, k)).collect(),
        None => workload.queries.clone(),
    };
    let k = cfg.k.or_else(|| workload.uniform_k());

    let sorted = sample.sorted();
    let mut rows = Vec::new();
    for &algorithm in &cfg.algorithms {
        let start = Instant::now();
        let index = algorithm.build(&sorted);
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        let measurement = measure(&index, &queries);
        rows.push(BenchRow {
            algorithm,
            n: sample.len(),
            k,
            build_ms,
            copies: index.as_index().stored_copies(),
            measurement,
        });
    }
    Ok(rows)
}
