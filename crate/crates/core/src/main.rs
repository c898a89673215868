use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use topk_stab::harness::{
    self, Algorithm, BenchConfig, DistSpec, Fault, GenConfig, VerifyOptions,
};
use topk_stab::{HarnessError, Query, WeightOrder};

/// Top-k weighted stabbing queries: data generation, verification and
/// benchmarking.
#[derive(Parser)]
#[command(name = "topk-stab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset CSV (`id,l,r,w`).
    Gen {
        #[arg(long)]
        n: usize,
        /// Left endpoints are uniform on [0, DOMAIN].
        #[arg(long, default_value_t = 1_000_000.0)]
        domain: f64,
        /// Interval lengths: `uniform:a,b` or `pareto:alpha,xmin`.
        #[arg(long, default_value = "uniform:0,1000")]
        length: DistSpec,
        /// Weights: `gaussian:mean,variance`, `uniform:a,b` or `pareto:alpha,xmin`.
        #[arg(long, default_value = "gaussian:5000,1500")]
        weight: DistSpec,
        /// Snap endpoints to multiples of this step.
        #[arg(long)]
        resolution: Option<f64>,
        /// Snap weights to multiples of this step.
        #[arg(long)]
        weight_step: Option<f64>,
        /// Clamp right endpoints to DOMAIN.
        #[arg(long)]
        clip: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Generate a query workload CSV (`s,k`) over a dataset's domain.
    Queries {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 25)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check every algorithm against the brute-force oracle.
    Verify {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        workload: PathBuf,
        #[arg(long, default_value = "max")]
        order: WeightOrder,
        /// Write a per-algorithm summary CSV here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Test hook `ALGO:ID`: build ALGO without interval ID.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Measure build time, stored copies and query latency.
    Bench {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        workload: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', default_value = "ss,it,if,st,sst,stpsa")]
        algos: Vec<Algorithm>,
        #[arg(long, default_value_t = 1.0)]
        sample_rate: f64,
        #[arg(long, default_value = "max")]
        order: WeightOrder,
        /// Override every query's k.
        #[arg(long)]
        k: Option<usize>,
        /// Seed for sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Answer one query and print `id,l,r,w` lines.
    Query {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        algo: Algorithm,
        #[arg(long = "s", allow_negative_numbers = true)]
        s: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "max")]
        order: WeightOrder,
    },
}

enum Failure {
    Mismatch(String),
    Usage(HarnessError),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Usage(e)
    }
}

fn io_error(path: Option<&Path>, source: io::Error) -> Failure {
    Failure::Usage(HarnessError::Io {
        path: path.map_or_else(|| "<stdout>".into(), |p| p.display().to_string()),
        source,
    })
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
    let result = match path {
        Some(p) => File::create(p).and_then(|file| {
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).and_then(|_| lock.flush())
        }
    };
    result.map_err(|e| io_error(path, e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            n,
            domain,
            length,
            weight,
            resolution,
            weight_step,
            clip,
            seed,
            out,
        } => {
            let cfg = GenConfig {
                n,
                domain,
                length,
                weight,
                seed,
                resolution,
                weight_step,
                clip,
            };
            let data = harness::generate_dataset(&cfg)?;
            with_output(out.as_deref(), |w| harness::write_dataset(w, data.intervals()))
        }
        Command::Queries {
            dataset,
            count,
            k,
            seed,
            out,
        } => {
            let data = harness::read_dataset(&dataset, WeightOrder::Max)?;
            let workload = harness::generate_queries(&data, count, k, seed)?;
            with_output(out.as_deref(), |w| harness::write_workload(w, &workload))
        }
        Command::Verify {
            dataset,
            workload,
            order,
            report,
            inject_fault,
        } => {
            let fault = inject_fault.as_deref().map(parse_fault).transpose()?;
            let data = harness::read_dataset(&dataset, order)?;
            let workload = harness::read_workload(&workload)?;
            let result = harness::verify(
                &data,
                &workload,
                &VerifyOptions {
                    fault,
                    ..Default::default()
                },
            );
            if let Some(path) = report.as_deref() {
                let csv = result.to_csv();
                with_output(Some(path), |w| w.write_all(csv.as_bytes()))?;
            }
            if let Some(d) = &result.first_divergence {
                return Err(Failure::Mismatch(d.to_string()));
            }
            if let Some(v) = &result.first_bound_violation {
                return Err(Failure::Mismatch(format!("access bound violated on {v}")));
            }
            println!(
                "ok: {} queries x {} algorithms agree with the oracle",
                workload.queries.len(),
                result.per_algorithm.len()
            );
            Ok(())
        }
        Command::Bench {
            dataset,
            workload,
            algos,
            sample_rate,
            order,
            k,
            seed,
            out,
        } => {
            let data = harness::read_dataset(&dataset, order)?;
            let workload = harness::read_workload(&workload)?;
            let cfg = BenchConfig {
                algorithms: algos,
                sample_rate,
                seed,
                k,
            };
            let rows = harness::bench(&data, &workload, &cfg)?;
            for row in &rows {
                if row.measurement.bound_violations > 0 {
                    eprintln!(
                        "warning: {} exceeded its access bound on {} queries",
                        row.algorithm, row.measurement.bound_violations
                    );
                }
            }
            let csv = harness::report_csv(&rows);
            with_output(out.as_deref(), |w| w.write_all(csv.as_bytes()))
        }
        Command::Query {
            dataset,
            algo,
            s,
            k,
            order,
        } => {
            let q = Query::try_new(s, k)
                .ok_or_else(|| HarnessError::Usage("k must be at least 1".into()))?;
            let data = harness::read_dataset(&dataset, order)?;
            let index = algo.build(&data.sorted());
            let result = index.as_index().topk(q);
            with_output(None, |w| {
                for x in result.iter() {
                    writeln!(w, "{},{},{},{}", x.id, x.l, x.r, order.present(x.w))?;
                }
                Ok(())
            })
        }
    }
}

fn parse_fault(spec: &str) -> Result<Fault, Failure> {
    let usage = || Failure::Usage(HarnessError::Usage(format!("invalid fault {spec:?}, expected ALGO:ID")));
    let (algo, id) = spec.split_once(':').ok_or_else(usage)?;
    Ok(Fault {
        algorithm: algo.parse().map_err(|_| usage())?,
        drop_id: id.parse().map_err(|_| usage())?,
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
