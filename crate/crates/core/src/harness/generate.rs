//! Seeded synthetic datasets and query workloads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Pareto, Uniform};

use super::io::Workload;
use crate::error::{HarnessError, Result};
use crate::interval::{Dataset, Interval, Query};

/// A one-dimensional distribution written as `kind:p1,p2`.
///
/// - `uniform:a,b`: uniform on `[a, b]`
/// - `pareto:alpha,xmin`: Pareto with shape `alpha` and scale `xmin`
/// - `gaussian:mean,variance`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistSpec {
    Uniform { a: f64, b: f64 },
    Pareto { alpha: f64, xmin: f64 },
    Gaussian { mean: f64, variance: f64 },
}

impl DistSpec {
    pub const DEFAULT_WEIGHT: DistSpec = DistSpec::Gaussian {
        mean: 5000.0,
        variance: 1500.0,
    };

    fn sampler(self) -> Sampler {
        match self {
            DistSpec::Uniform { a, b } => Sampler::Uniform(Uniform::new_inclusive(a, b).expect("validated")),
            DistSpec::Pareto { alpha, xmin } => Sampler::Pareto(Pareto::new(xmin, alpha).expect("validated")),
            DistSpec::Gaussian { mean, variance } => {
                Sampler::Normal(Normal::new(mean, variance.sqrt()).expect("validated"))
            }
        }
    }

    fn is_non_negative(self) -> bool {
        match self {
            DistSpec::Uniform { a, .. } => a >= 0.0,
            DistSpec::Pareto { .. } => true,
            DistSpec::Gaussian { .. } => false,
        }
    }
}

enum Sampler {
    Uniform(Uniform<f64>),
    Pareto(Pareto<f64>),
    Normal(Normal<f64>),
}

impl Sampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Sampler::Uniform(d) => d.sample(rng),
            Sampler::Pareto(d) => d.sample(rng),
            Sampler::Normal(d) => d.sample(rng),
        }
    }
}

impl FromStr for DistSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| format!("distribution {s:?} must look like kind:p1,p2"))?;
        let params: Vec<f64> = params
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| format!("distribution {s:?} has a non-numeric parameter"))?;
        let [p1, p2] = params[..] else {
            return Err(format!("distribution {s:?} needs exactly two parameters"));
        };
        if !p1.is_finite() || !p2.is_finite() {
            return Err(format!("distribution {s:?} has a non-finite parameter"));
        }
        match kind {
            "uniform" if p1 <= p2 => Ok(DistSpec::Uniform { a: p1, b: p2 }),
            "uniform" => Err(format!("uniform:{p1},{p2} needs a <= b")),
            "pareto" if p1 > 0.0 && p2 > 0.0 => Ok(DistSpec::Pareto { alpha: p1, xmin: p2 }),
            "pareto" => Err(format!("pareto:{p1},{p2} needs alpha > 0 and xmin > 0")),
            "gaussian" if p2 >= 0.0 => Ok(DistSpec::Gaussian {
                mean: p1,
                variance: p2,
            }),
            "gaussian" => Err(format!("gaussian:{p1},{p2} needs variance >= 0")),
            other => Err(format!("unknown distribution {other:?}; expected uniform, pareto or gaussian")),
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistSpec::Uniform { a, b } => write!(f, "uniform:{a},{b}"),
            DistSpec::Pareto { alpha, xmin } => write!(f, "pareto:{alpha},{xmin}"),
            DistSpec::Gaussian { mean, variance } => write!(f, "gaussian:{mean},{variance}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    /// Left endpoints are uniform on `[0, domain]`.
    pub domain: f64,
    pub length: DistSpec,
    pub weight: DistSpec,
    pub seed: u64,
    /// Snap endpoints to multiples of this step (discrete timestamps).
    pub resolution: Option<f64>,
    /// Snap weights to multiples of this step, forcing ties.
    pub weight_step: Option<f64>,
    /// Clamp right endpoints to `domain`.
    pub clip: bool,
}

impl GenConfig {
    pub fn new(n: usize, domain: f64, length: DistSpec, seed: u64) -> Self {
        Self {
            n,
            domain,
            length,
            weight: DistSpec::DEFAULT_WEIGHT,
            seed,
            resolution: None,
            weight_step: None,
            clip: false,
        }
    }
}

fn snap(x: f64, step: Option<f64>) -> f64 {
    match step {
        Some(step) => (x / step).round() * step,
        None => x,
    }
}

/// Intervals with ids `1..=n`.
pub fn generate_dataset(cfg: &GenConfig) -> Result<Dataset> {
    if cfg.n == 0 {
        return Err(HarnessError::Usage("n must be at least 1".into()));
    }
    if !(cfg.domain.is_finite() && cfg.domain >= 0.0) {
        return Err(HarnessError::Usage(format!("invalid domain {}", cfg.domain)));
    }
    if !cfg.length.is_non_negative() {
        return Err(HarnessError::Usage(format!(
            "length distribution {} can produce negative lengths",
            cfg.length
        )));
    }
    for (name, step) in [("resolution", cfg.resolution), ("weight step", cfg.weight_step)] {
        if let Some(step) = step {
            if !(step.is_finite() && step > 0.0) {
                return Err(HarnessError::Usage(format!("{name} must be positive, got {step}")));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = Uniform::new_inclusive(0.0, cfg.domain).expect("validated domain");
    let length = cfg.length.sampler();
    let weight = cfg.weight.sampler();
    let intervals: Vec<Interval> = (1..=cfg.n as u64)
        .map(|id| {
            let l = snap(start.sample(&mut rng), cfg.resolution);
            let mut r = l + snap(length.sample(&mut rng), cfg.resolution);
            if cfg.clip {
                r = r.min(cfg.domain.max(l));
            }
            let w = snap(weight.sample(&mut rng), cfg.weight_step);
            Interval::new(id, l, r, w)
        })
        .collect();
    Dataset::from_intervals(intervals).map_err(|e| HarnessError::Usage(format!("generated invalid data: {e}")))
}

/// `count` query values uniform over the dataset's domain, all with the same
/// `k`.
pub fn generate_queries(dataset: &Dataset, count: usize, k: usize, seed: u64) -> Result<Workload> {
    let (lo, hi) = dataset
        .domain()
        .ok_or_else(|| HarnessError::Usage("cannot generate queries for an empty dataset".into()))?;
    if k == 0 {
        return Err(HarnessError::Usage("k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries = (0..count)
        .map(|_| Query::new(rng.random_range(lo..=hi), k))
        .collect();
    Ok(Workload { queries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("uniform:0,0".parse(), Ok(DistSpec::Uniform { a: 0.0, b: 0.0 }));
        assert_eq!("pareto:2,25".parse(), Ok(DistSpec::Pareto { alpha: 2.0, xmin: 25.0 }));
        assert_eq!("gaussian:5000,1500".parse(), Ok(DistSpec::DEFAULT_WEIGHT));
        for bad in ["uniform:2,1", "pareto:0,1", "gaussian:1,-1", "beta:1,2", "uniform:1", "uniform", "uniform:a,b"] {
            assert!(bad.parse::<DistSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn degenerate_lengths() {
        let cfg = GenConfig::new(50, 100.0, DistSpec::Uniform { a: 0.0, b: 0.0 }, 3);
        let d = generate_dataset(&cfg).unwrap();
        assert!(d.intervals().iter().all(|x| x.l == x.r));
    }

    #[test]
    fn deterministic() {
        let mut cfg = GenConfig::new(200, 1000.0, DistSpec::Pareto { alpha: 2.0, xmin: 5.0 }, 11);
        cfg.resolution = Some(1.0);
        let a = generate_dataset(&cfg).unwrap();
        let b = generate_dataset(&cfg).unwrap();
        assert_eq!(a.intervals(), b.intervals());
        assert!(a.intervals().iter().all(|x| x.l.fract() == 0.0 && x.r.fract() == 0.0));

        cfg.clip = true;
        let c = generate_dataset(&cfg).unwrap();
        assert!(c.intervals().iter().all(|x| x.l <= x.r && x.r <= 1000.0));
        assert!(c.intervals().iter().zip(a.intervals()).all(|(x, y)| x.l == y.l && x.w == y.w));

        let qa = generate_queries(&a, 30, 25, 5).unwrap();
        assert_eq!(qa, generate_queries(&a, 30, 25, 5).unwrap());
        let (lo, hi) = a.domain().unwrap();
        assert!(qa.queries.iter().all(|q| lo <= q.s && q.s <= hi && q.k == 25));
    }

    #[test]
    fn gaussian_weight_mean() {
        // Standard error of the mean is sqrt(1500 / 1e5) ~ 0.12.
        let cfg = GenConfig::new(100_000, 1000.0, DistSpec::Uniform { a: 0.0, b: 10.0 }, 99);
        let d = generate_dataset(&cfg).unwrap();
        let mean = d.intervals().iter().map(|x| x.w).sum::<f64>() / d.len() as f64;
        assert!((mean - 5000.0).abs() < 50.0, "mean {mean}");
        let var = d.intervals().iter().map(|x| (x.w - mean).powi(2)).sum::<f64>() / (d.len() - 1) as f64;
        assert!((var - 1500.0).abs() < 50.0, "variance {var}");
    }

    #[test]
    fn usage_errors() {
        let cfg = GenConfig::new(0, 10.0, DistSpec::Uniform { a: 0.0, b: 1.0 }, 0);
        assert!(generate_dataset(&cfg).is_err());
        let cfg = GenConfig::new(5, 10.0, DistSpec::DEFAULT_WEIGHT, 0);
        assert!(generate_dataset(&cfg).is_err());
        let empty = Dataset::from_intervals(vec![]).unwrap();
        assert!(generate_queries(&empty, 3, 1, 0).is_err());
    }
}
