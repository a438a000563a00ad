//! Monte Carlo replicas, exact enumeration on tiny instances, and
//! total-variation comparison of per-agent infection-time distributions.
//!
//! Replica `r` always uses `CoinStream::new(base_seed + r)`, so any replica
//! can be rerun in isolation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolean::run_boolean_scheduled;
use crate::discrete::{init_state, is_absorbed, simulate_infection_times, step};
use crate::error::{McError, SimError};
use crate::graph::{build_realization, shortest_infection_times};
use crate::model::{
    CoinSource, CoinStream, Edge, ExtendedTime, ExternalSchedule, InfectionTimes, Network, TransmissionWindowMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Discrete,
    Boolean,
    Graph,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "discrete" => Ok(Engine::Discrete),
            "boolean" => Ok(Engine::Boolean),
            "graph" => Ok(Engine::Graph),
            other => Err(format!("unknown engine `{other}`")),
        }
    }
}

/// Per-agent histograms of `k_i` over `replicas` runs, ∞ as its own bucket.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmpiricalTimes {
    replicas: u64,
    histograms: Vec<BTreeMap<ExtendedTime, u64>>,
}

impl EmpiricalTimes {
    pub fn new(n: usize) -> Self {
        Self {
            replicas: 0,
            histograms: vec![BTreeMap::new(); n],
        }
    }

    pub fn record(&mut self, times: &InfectionTimes) {
        if self.histograms.is_empty() {
            self.histograms = vec![BTreeMap::new(); times.len()];
        }
        for (h, t) in self.histograms.iter_mut().zip(times.iter()) {
            *h.entry(t).or_insert(0) += 1;
        }
        self.replicas += 1;
    }

    /// Associative, order-independent merge.
    pub fn merge(mut self, other: EmpiricalTimes) -> EmpiricalTimes {
        if self.histograms.is_empty() {
            return other;
        }
        for (h, o) in self.histograms.iter_mut().zip(other.histograms) {
            for (t, c) in o {
                *h.entry(t).or_insert(0) += c;
            }
        }
        self.replicas += other.replicas;
        self
    }

    pub fn replicas(&self) -> u64 {
        self.replicas
    }

    pub fn n(&self) -> usize {
        self.histograms.len()
    }

    pub fn histogram(&self, agent: usize) -> &BTreeMap<ExtendedTime, u64> {
        &self.histograms[agent]
    }

    pub fn count(&self, agent: usize, t: ExtendedTime) -> u64 {
        self.histograms[agent].get(&t).copied().unwrap_or(0)
    }

    pub fn distribution(&self) -> TimeDistribution {
        let m = self.replicas.max(1) as f64;
        TimeDistribution {
            per_agent: self
                .histograms
                .iter()
                .map(|h| h.iter().map(|(&t, &c)| (t, c as f64 / m)).collect())
                .collect(),
        }
    }
}

/// Per-agent probability mass over `ℕ ∪ {∞}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeDistribution {
    pub per_agent: Vec<BTreeMap<ExtendedTime, f64>>,
}

impl TimeDistribution {
    pub fn prob(&self, agent: usize, t: ExtendedTime) -> f64 {
        self.per_agent[agent].get(&t).copied().unwrap_or(0.0)
    }
}

/// Infection times of one replica.
pub fn run_replica(
    net: &Network,
    ext: &ExternalSchedule,
    engine: Engine,
    seed: u64,
    mode: TransmissionWindowMode,
) -> Result<InfectionTimes, SimError> {
    let coins = CoinStream::new(seed);
    let horizon = net.duration_bound(ext);
    match engine {
        Engine::Discrete => simulate_infection_times(net, ext, &coins, horizon, mode),
        // always realizes the literal transmission window
        Engine::Boolean => run_boolean_scheduled(net, ext, &coins, horizon)?.infection_times(),
        Engine::Graph => Ok(shortest_infection_times(&build_realization(net, ext, &coins))),
    }
}

/// Runs `replicas` independent replicas in parallel on the current rayon pool.
pub fn run_montecarlo(
    net: &Network,
    ext: &ExternalSchedule,
    replicas: u64,
    engine: Engine,
    base_seed: u64,
    mode: TransmissionWindowMode,
) -> Result<EmpiricalTimes, McError> {
    if replicas == 0 {
        return Err(McError::NoReplicas);
    }
    (0..replicas)
        .into_par_iter()
        .map(|r| run_replica(net, ext, engine, base_seed.wrapping_add(r), mode))
        .try_fold(
            || EmpiricalTimes::new(net.n()),
            |mut acc, times| {
                acc.record(&times?);
                Ok::<_, McError>(acc)
            },
        )
        .try_reduce(|| EmpiricalTimes::new(net.n()), |a, b| Ok(a.merge(b)))
}

/// Upper bound on `|E| · T` for [`enumerate_exact`].
pub const MAX_ENUMERATED_COINS: u64 = 24;

struct TableCoins {
    bits: u64,
    edges: usize,
}

impl CoinSource for TableCoins {
    fn coin(&self, _edge: &Edge, edge_index: usize, k: u64) -> bool {
        let pos = k as usize * self.edges + edge_index;
        pos < 64 && self.bits >> pos & 1 == 1
    }
}

/// Exact per-agent law of `k_i` by running the discrete engine on every one
/// of the `2^(|E|·T)` coin assignments on steps `0 .. T`.
pub fn enumerate_exact(
    net: &Network,
    ext: &ExternalSchedule,
    horizon: u64,
    mode: TransmissionWindowMode,
) -> Result<TimeDistribution, McError> {
    let m = net.edge_count();
    let bits = m as u64 * horizon;
    if bits > MAX_ENUMERATED_COINS {
        return Err(McError::TooLarge {
            bits,
            limit: MAX_ENUMERATED_COINS,
        });
    }
    let mut per_agent = vec![BTreeMap::new(); net.n()];
    for assignment in 0..(1u64 << bits) {
        let mut weight = 1.0;
        for pos in 0..bits {
            let p = net.edges()[(pos % m as u64) as usize].p;
            weight *= if assignment >> pos & 1 == 1 { p } else { 1.0 - p };
        }
        if weight == 0.0 {
            continue;
        }
        let coins = TableCoins {
            bits: assignment,
            edges: m,
        };
        let mut state = init_state(net, &[]);
        let mut times = vec![ExtendedTime::Infinite; net.n()];
        loop {
            for (i, t) in times.iter_mut().enumerate() {
                if state.infected[i] && !t.is_finite() {
                    *t = ExtendedTime::Finite(state.k);
                }
            }
            if is_absorbed(&state, ext) {
                break;
            }
            if state.k >= horizon {
                return Err(SimError::HorizonTooShort { horizon }.into());
            }
            state = step(&state, net, ext, &coins, mode);
        }
        for (dist, t) in per_agent.iter_mut().zip(times) {
            *dist.entry(t).or_insert(0.0) += weight;
        }
    }
    Ok(TimeDistribution { per_agent })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    /// Total-variation distance per agent, in `[0, 1]`.
    pub per_agent: Vec<f64>,
    pub max: f64,
    pub worst_agent: Option<usize>,
}

/// Per-agent total-variation distance `½ Σ_t |a(t) - b(t)|`, with ∞ treated
/// as an ordinary category.
pub fn compare_distributions(a: &TimeDistribution, b: &TimeDistribution) -> Result<ComparisonReport, McError> {
    if a.per_agent.len() != b.per_agent.len() {
        return Err(McError::AgentMismatch {
            left: a.per_agent.len(),
            right: b.per_agent.len(),
        });
    }
    let per_agent: Vec<f64> = a
        .per_agent
        .iter()
        .zip(&b.per_agent)
        .map(|(da, db)| {
            let mut keys: Vec<&ExtendedTime> = da.keys().chain(db.keys()).collect();
            keys.sort_unstable();
            keys.dedup();
            let sum: f64 = keys
                .into_iter()
                .map(|t| (da.get(t).unwrap_or(&0.0) - db.get(t).unwrap_or(&0.0)).abs())
                .sum();
            (0.5 * sum).min(1.0)
        })
        .collect();
    let (worst_agent, max) =
        per_agent.iter().copied().enumerate().fold(
            (None, 0.0),
            |(wa, wm), (i, d)| if d > wm { (Some(i), d) } else { (wa, wm) },
        );
    Ok(ComparisonReport {
        per_agent,
        max,
        worst_agent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_network;

    fn path3() -> (Network, ExternalSchedule) {
        let net = build_network(3, &[(0, 1, 0.5), (1, 2, 0.5)], &[1; 3]).unwrap();
        let ext = ExternalSchedule::from_pairs(3, &[(0, 1)]).unwrap();
        (net, ext)
    }

    #[test]
    fn single_replica_is_point_mass() {
        let (net, ext) = path3();
        let e = run_montecarlo(&net, &ext, 1, Engine::Discrete, 7, TransmissionWindowMode::default()).unwrap();
        assert_eq!(e.replicas(), 1);
        for i in 0..3 {
            assert_eq!(e.histogram(i).values().sum::<u64>(), 1);
            assert_eq!(e.histogram(i).len(), 1);
        }
        assert_eq!(
            run_montecarlo(&net, &ext, 0, Engine::Discrete, 7, TransmissionWindowMode::default()),
            Err(McError::NoReplicas)
        );
    }

    #[test]
    fn replicas_are_reproducible_in_isolation() {
        let (net, ext) = path3();
        let full = run_montecarlo(&net, &ext, 64, Engine::Graph, 100, TransmissionWindowMode::default()).unwrap();
        let mut manual = EmpiricalTimes::new(3);
        for r in 0..64 {
            manual.record(&run_replica(&net, &ext, Engine::Graph, 100 + r, TransmissionWindowMode::default()).unwrap());
        }
        assert_eq!(full, manual);
    }

    #[test]
    fn exact_path_distribution() {
        let (net, ext) = path3();
        let d = enumerate_exact(&net, &ext, 5, TransmissionWindowMode::GraphConsistent).unwrap();
        assert!((d.prob(2, ExtendedTime::Finite(3)) - 0.25).abs() < 1e-12);
        assert!((d.prob(2, ExtendedTime::Infinite) - 0.75).abs() < 1e-12);
        assert!((d.prob(0, ExtendedTime::Finite(1)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_single_agent_and_pair() {
        let net = build_network(1, &[], &[2]).unwrap();
        let ext = ExternalSchedule::from_pairs(1, &[(0, 3)]).unwrap();
        let d = enumerate_exact(&net, &ext, 6, TransmissionWindowMode::default()).unwrap();
        assert_eq!(d.prob(0, ExtendedTime::Finite(3)), 1.0);

        for p in [0.1, 0.35, 0.9] {
            let net = build_network(2, &[(0, 1, p)], &[1, 1]).unwrap();
            let ext = ExternalSchedule::from_pairs(2, &[(0, 1)]).unwrap();
            let d = enumerate_exact(&net, &ext, 5, TransmissionWindowMode::GraphConsistent).unwrap();
            assert!((d.prob(1, ExtendedTime::Finite(2)) - p).abs() < 1e-12);
            assert!((d.prob(1, ExtendedTime::Infinite) - (1.0 - p)).abs() < 1e-12);
        }
    }

    #[test]
    fn enumeration_limits() {
        let (net, ext) = path3();
        assert!(matches!(
            enumerate_exact(&net, &ext, 13, TransmissionWindowMode::default()),
            Err(McError::TooLarge { bits: 26, .. })
        ));
        assert!(matches!(
            enumerate_exact(&net, &ext, 2, TransmissionWindowMode::default()),
            Err(McError::Sim(SimError::HorizonTooShort { horizon: 2 }))
        ));
    }

    #[test]
    fn tv_distance_examples() {
        let point = |t: u64| TimeDistribution {
            per_agent: vec![BTreeMap::from([(ExtendedTime::Finite(t), 1.0)])],
        };
        let r = compare_distributions(&point(3), &point(3)).unwrap();
        assert_eq!(r.max, 0.0);
        let r = compare_distributions(&point(3), &point(4)).unwrap();
        assert_eq!(r.max, 1.0);
        assert_eq!(r.worst_agent, Some(0));
        let two = TimeDistribution {
            per_agent: vec![BTreeMap::new(); 2],
        };
        assert!(compare_distributions(&point(3), &two).is_err());
    }

    #[test]
    fn merge_is_order_independent() {
        let (net, ext) = path3();
        let mut a = EmpiricalTimes::new(3);
        let mut b = EmpiricalTimes::new(3);
        for r in 0..10 {
            let t = run_replica(&net, &ext, Engine::Discrete, r, TransmissionWindowMode::default()).unwrap();
            if r % 2 == 0 {
                a.record(&t)
            } else {
                b.record(&t)
            }
        }
        assert_eq!(a.clone().merge(b.clone()), b.merge(a));
    }
}
