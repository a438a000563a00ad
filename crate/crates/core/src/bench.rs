//! Cost comparison between the time-stepping engine and the Contagion Graph.
//!
//! Gates rely on operation counts, which are deterministic given the
//! scenario and seed; wall time is recorded for information only.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::discrete::count_operations_fixed_horizon;
use crate::error::BenchError;
use crate::graph::{build_realization_counted, per_source_infection_times, shortest_infection_times_counted};
use crate::model::{CoinStream, ExternalSchedule, Network, TransmissionWindowMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchEngine {
    /// Fixed-horizon discrete dynamics, no early stop.
    Discrete,
    /// Contagion Graph with one binary-heap sweep from a super-source.
    GraphHeap,
    /// Contagion Graph with one dense `O(n²)` Dijkstra per external node.
    GraphDense,
}

impl BenchEngine {
    pub const ALL: [BenchEngine; 3] = [BenchEngine::Discrete, BenchEngine::GraphHeap, BenchEngine::GraphDense];

    pub fn name(self) -> &'static str {
        match self {
            BenchEngine::Discrete => "discrete",
            BenchEngine::GraphHeap => "graph-heap",
            BenchEngine::GraphDense => "graph-dense",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchScenario {
    pub network: Network,
    pub external: ExternalSchedule,
    pub horizon: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub engine: BenchEngine,
    pub n: usize,
    pub m: usize,
    pub horizon: u64,
    pub ext: usize,
    pub ops: u64,
    /// Median wall time over repetitions.
    pub millis: f64,
    /// For the discrete engine, the dense count `n(n+4)` per step.
    pub dense_ops: Option<u64>,
}

fn measure(engine: BenchEngine, sc: &BenchScenario) -> u64 {
    let coins = CoinStream::new(sc.seed);
    match engine {
        BenchEngine::Discrete => count_operations_fixed_horizon(
            &sc.network,
            &sc.external,
            &coins,
            sc.horizon,
            TransmissionWindowMode::GraphConsistent,
        ),
        BenchEngine::GraphHeap => {
            let (g, build) = build_realization_counted(&sc.network, &sc.external, &coins);
            let (_, stats) = shortest_infection_times_counted(&g);
            build + stats.total()
        }
        BenchEngine::GraphDense => {
            let (g, build) = build_realization_counted(&sc.network, &sc.external, &coins);
            let (_, stats) = per_source_infection_times(&g, true);
            build + stats.total()
        }
    }
}

/// Runs every engine on every scenario `repetitions` times, in order.
pub fn run_benchmark(scenarios: &[BenchScenario], repetitions: usize) -> Vec<BenchRecord> {
    let reps = repetitions.max(1);
    let mut out = Vec::with_capacity(scenarios.len() * BenchEngine::ALL.len());
    for sc in scenarios {
        for engine in BenchEngine::ALL {
            let mut times = Vec::with_capacity(reps);
            let mut ops = 0;
            for _ in 0..reps {
                let start = Instant::now();
                ops = std::hint::black_box(measure(engine, sc));
                times.push(start.elapsed().as_secs_f64() * 1e3);
            }
            times.sort_by(f64::total_cmp);
            let n = sc.network.n() as u64;
            out.push(BenchRecord {
                engine,
                n: sc.network.n(),
                m: sc.network.edge_count(),
                horizon: sc.horizon,
                ext: sc.external.source_count(),
                ops,
                millis: times[times.len() / 2],
                dense_ops: (engine == BenchEngine::Discrete).then(|| n * (n + 4) * sc.horizon),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub engine: BenchEngine,
    pub points: usize,
    /// Least-squares slope of operations against horizon.
    pub slope: f64,
    pub intercept: f64,
    /// Least-squares slope of `ln ops` against `ln T`: 1 for linear, 0 for constant.
    pub exponent: f64,
    /// Largest `|ops / (c·T) - 1|` for the best proportional fit `c·T`.
    pub max_linear_deviation: f64,
    pub constant: bool,
}

impl ScalingReport {
    pub fn is_linear(&self, tolerance: f64) -> bool {
        self.max_linear_deviation <= tolerance && (self.exponent - 1.0).abs() <= tolerance
    }
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (slope, my - slope * mx)
}

/// Fits operation counts against the horizon, per engine.
pub fn check_scaling(records: &[BenchRecord]) -> Result<Vec<ScalingReport>, BenchError> {
    let mut by_engine: BTreeMap<BenchEngine, Vec<(f64, f64)>> = BTreeMap::new();
    for r in records {
        by_engine
            .entry(r.engine)
            .or_default()
            .push((r.horizon as f64, r.ops as f64));
    }
    let mut reports = Vec::new();
    for (engine, mut pts) in by_engine {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut distinct: Vec<f64> = pts.iter().map(|p| p.0).collect();
        distinct.dedup();
        if distinct.len() < 3 {
            return Err(BenchError::InsufficientData {
                engine: engine.name().to_string(),
                points: distinct.len(),
            });
        }
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let (slope, intercept) = least_squares(&xs, &ys);
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = ys.iter().map(|y| y.max(1.0).ln()).collect();
        let (exponent, _) = least_squares(&lx, &ly);
        let c = xs.iter().zip(&ys).map(|(x, y)| x * y).sum::<f64>() / xs.iter().map(|x| x * x).sum::<f64>();
        let max_linear_deviation = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| {
                if c == 0.0 {
                    f64::INFINITY
                } else {
                    (y / (c * x) - 1.0).abs()
                }
            })
            .fold(0.0, f64::max);
        let constant = ys.iter().all(|&y| y == ys[0]);
        reports.push(ScalingReport {
            engine,
            points: pts.len(),
            slope,
            intercept,
            exponent,
            max_linear_deviation,
            constant,
        });
    }
    Ok(reports)
}
