//! Shared domain types: networks, external schedules, extended times and the
//! counter-based coin stream every engine draws from.
//!
//! Agents are indexed from zero internally. File formats and reports use
//! one-based ids; convert with [`AgentId::one_based`] and
//! [`AgentId::from_one_based`].

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Zero-based agent index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub usize);

impl AgentId {
    pub fn from_one_based(id: u64) -> Option<Self> {
        id.checked_sub(1).map(|i| AgentId(i as usize))
    }

    pub fn one_based(self) -> u64 {
        self.0 as u64 + 1
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// A time step in `ℕ ∪ {∞}`. `Infinite` orders after every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedTime {
    Finite(u64),
    Infinite,
}

impl ExtendedTime {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedTime::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedTime::Finite(v) => Some(v),
            ExtendedTime::Infinite => None,
        }
    }
}

impl From<Option<u64>> for ExtendedTime {
    fn from(v: Option<u64>) -> Self {
        v.map_or(ExtendedTime::Infinite, ExtendedTime::Finite)
    }
}

impl Add for ExtendedTime {
    type Output = ExtendedTime;

    fn add(self, rhs: ExtendedTime) -> ExtendedTime {
        match (self, rhs) {
            (ExtendedTime::Finite(a), ExtendedTime::Finite(b)) => {
                a.checked_add(b).map_or(ExtendedTime::Infinite, ExtendedTime::Finite)
            }
            _ => ExtendedTime::Infinite,
        }
    }
}

impl Add<u64> for ExtendedTime {
    type Output = ExtendedTime;

    fn add(self, rhs: u64) -> ExtendedTime {
        self + ExtendedTime::Finite(rhs)
    }
}

impl fmt::Display for ExtendedTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedTime::Finite(v) => write!(f, "{v}"),
            ExtendedTime::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedTime {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "INF" | "Infinity" | "infinity" => Ok(ExtendedTime::Infinite),
            other => other.parse().map(ExtendedTime::Finite),
        }
    }
}

/// The step function: 0 for `v <= 0`, 1 otherwise.
pub fn step_function(v: f64) -> u8 {
    u8::from(v > 0.0)
}

/// One undirected contact, stored once with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub p: f64,
}

impl Edge {
    pub fn other(&self, i: usize) -> usize {
        if i == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Static undirected contact network with per-edge transmission
/// probabilities and per-agent recovery times.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    n: usize,
    edges: Vec<Edge>,
    recovery: Vec<u32>,
    // (neighbor, edge index)
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Network {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn recovery(&self) -> &[u32] {
        &self.recovery
    }

    pub fn recovery_of(&self, i: usize) -> u32 {
        self.recovery[i]
    }

    /// Neighbors of `i` with the index of the connecting edge.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn edge_between(&self, i: usize, j: usize) -> Option<usize> {
        self.adjacency.get(i)?.iter().find(|&&(nb, _)| nb == j).map(|&(_, e)| e)
    }

    /// Number of steps after which every epidemic on this network is over:
    /// the last external event plus one full infectious period per agent.
    pub fn duration_bound(&self, ext: &ExternalSchedule) -> u64 {
        let last_ext = ext.last_event().unwrap_or(0);
        let periods: u64 = self.recovery.iter().map(|&r| u64::from(r) + 1).sum();
        last_ext + periods + 1
    }
}

/// Validates and assembles a [`Network`].
pub fn build_network(n: usize, edge_list: &[(usize, usize, f64)], recovery: &[u32]) -> Result<Network, ModelError> {
    if n == 0 {
        return Err(ModelError::EmptyNetwork);
    }
    if recovery.len() != n {
        return Err(ModelError::RecoveryLengthMismatch {
            expected: n,
            got: recovery.len(),
        });
    }
    if let Some(agent) = recovery.iter().position(|&r| r == 0) {
        return Err(ModelError::NonPositiveRecovery { agent, value: 0 });
    }

    let mut seen = HashSet::with_capacity(edge_list.len());
    let mut edges = Vec::with_capacity(edge_list.len());
    let mut adjacency = vec![Vec::new(); n];
    for &(i, j, p) in edge_list {
        if i >= n {
            return Err(ModelError::AgentOutOfRange(i));
        }
        if j >= n {
            return Err(ModelError::AgentOutOfRange(j));
        }
        if i == j {
            return Err(ModelError::SelfEdge(i));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(ModelError::ProbabilityOutOfRange { i, j, p });
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if !seen.insert((a, b)) {
            return Err(ModelError::DuplicateEdge(i, j));
        }
        let idx = edges.len();
        edges.push(Edge { a, b, p });
        adjacency[a].push((b, idx));
        adjacency[b].push((a, idx));
    }

    Ok(Network {
        n,
        edges,
        recovery: recovery.to_vec(),
        adjacency,
    })
}

/// Earliest possible external infection time per agent, `τ_ext ≥ 1` or ∞.
///
/// An agent with `τ_ext = t` receives its external input at step `t - 1`
/// and is infected at step `t` unless already infected or recovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSchedule {
    tau: Vec<ExtendedTime>,
}

impl ExternalSchedule {
    /// Every agent protected against external infection.
    pub fn none(n: usize) -> Self {
        Self {
            tau: vec![ExtendedTime::Infinite; n],
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self, ModelError> {
        let mut s = Self::none(n);
        for &(agent, t) in pairs {
            s.set(agent, t)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, agent: usize, tau: u64) -> Result<(), ModelError> {
        if agent >= self.tau.len() {
            return Err(ModelError::AgentOutOfRange(agent));
        }
        if tau == 0 {
            return Err(ModelError::NonPositiveExternalTime(agent));
        }
        self.tau[agent] = ExtendedTime::Finite(tau);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau(&self, agent: usize) -> ExtendedTime {
        self.tau[agent]
    }

    /// Agents subject to external infection, with their times.
    pub fn sources(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.tau
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.finite().map(|t| (i, t)))
    }

    pub fn source_count(&self) -> usize {
        self.sources().count()
    }

    /// `u_i(k)`: true exactly at `k = τ_ext - 1`.
    pub fn fires_at(&self, agent: usize, k: u64) -> bool {
        matches!(self.tau[agent], ExtendedTime::Finite(t) if t - 1 == k)
    }

    pub fn last_event(&self) -> Option<u64> {
        self.sources().map(|(_, t)| t).max()
    }
}

/// How many transmission slots an infected agent gets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmissionWindowMode {
    /// Agent `j` transmits on `k_j ..= k_j + R_j - 1` (`R_j` slots).
    #[default]
    GraphConsistent,
    /// Agent `j` transmits whenever infected: `k_j ..= k_j + R_j` (`R_j + 1` slots).
    LiteralDynamics,
}

impl FromStr for TransmissionWindowMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph_consistent" | "graph-consistent" => Ok(Self::GraphConsistent),
            "literal_dynamics" | "literal-dynamics" | "literal" => Ok(Self::LiteralDynamics),
            other => Err(format!("unknown transmission window mode `{other}`")),
        }
    }
}

/// Per-agent first infection step `k_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfectionTimes(Vec<ExtendedTime>);

impl InfectionTimes {
    pub fn new(times: Vec<ExtendedTime>) -> Self {
        Self(times)
    }

    pub fn all_infinite(n: usize) -> Self {
        Self(vec![ExtendedTime::Infinite; n])
    }

    pub fn as_slice(&self) -> &[ExtendedTime] {
        &self.0
    }

    pub fn get(&self, agent: usize) -> ExtendedTime {
        self.0[agent]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ExtendedTime> + '_ {
        self.0.iter().copied()
    }

    pub fn infected_count(&self) -> usize {
        self.0.iter().filter(|t| t.is_finite()).count()
    }

    /// Adds `offset` to every finite time.
    pub fn shifted(&self, offset: u64) -> Self {
        Self(self.0.iter().map(|&t| t + offset).collect())
    }

    pub fn into_vec(self) -> Vec<ExtendedTime> {
        self.0
    }
}

impl From<Vec<ExtendedTime>> for InfectionTimes {
    fn from(v: Vec<ExtendedTime>) -> Self {
        Self(v)
    }
}

/// Compartment counts at one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub k: u64,
    pub susceptible: usize,
    pub infected: usize,
    pub recovered: usize,
}

pub type EpidemicCurve = Vec<CurvePoint>;

/// Source of contagion coefficients `w_ij(k)`.
///
/// Implementations must be pure: the same `(edge, k)` always yields the same
/// bit, independent of query order.
pub trait CoinSource {
    fn coin(&self, edge: &Edge, edge_index: usize, k: u64) -> bool;
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const COIN_TAG: u64 = 0x436f_696e_5f77_696a;

/// Purpose tag for the directed uniforms behind sampled Contagion Graph weights.
pub const EDGE_WEIGHT_TAG: u64 = 0x5765_6967_6874_5f75;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based random stream keyed by `(seed, purpose, edge, time)`.
///
/// Every draw is a pure function of its key, so the discrete engine, the
/// Boolean engine and the coupling checks see identical realizations no
/// matter in which order they ask.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoinStream {
    seed: u64,
    time_offset: u64,
}

impl CoinStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, time_offset: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A view whose step `k` reads this stream's step `k + offset`.
    pub fn shifted(&self, offset: u64) -> Self {
        Self {
            seed: self.seed,
            time_offset: self.time_offset + offset,
        }
    }

    fn hash(&self, tag: u64, a: u64, b: u64, c: u64) -> u64 {
        let mut h = mix64(self.seed.wrapping_add(GOLDEN));
        for word in [tag, a, b, c] {
            h = mix64(h ^ word.wrapping_mul(GOLDEN).wrapping_add(0x632B_E59B_D9B4_E019));
        }
        h
    }

    fn to_open_unit(h: u64) -> f64 {
        ((h >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in the open interval (0, 1) for a directed pair.
    pub fn uniform(&self, tag: u64, src: usize, dst: usize) -> f64 {
        Self::to_open_unit(self.hash(tag, src as u64, dst as u64, u64::MAX))
    }

    /// Symmetric Bernoulli(`p`) coin for the unordered pair `{i, j}` at step `k`.
    pub fn bernoulli(&self, i: usize, j: usize, k: u64, p: f64) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let u = Self::to_open_unit(self.hash(COIN_TAG, a as u64, b as u64, k + self.time_offset));
        u < p
    }
}

impl CoinSource for CoinStream {
    fn coin(&self, edge: &Edge, _edge_index: usize, k: u64) -> bool {
        self.bernoulli(edge.a, edge.b, k, edge.p)
    }
}

impl<C: CoinSource + ?Sized> CoinSource for &C {
    fn coin(&self, edge: &Edge, edge_index: usize, k: u64) -> bool {
        (**self).coin(edge, edge_index, k)
    }
}

/// `⌈log_{1-p} u⌉`, clamped to at least 1.
///
/// `p = 1` yields 1 and `p = 0` yields `u64::MAX`, the limits of the formula.
/// Exact-integer logarithms resolve by the ceiling as computed in floating
/// point.
pub fn geometric_sample(p: f64, u: f64) -> u64 {
    debug_assert!(u > 0.0 && u < 1.0, "u must lie in (0, 1)");
    if p >= 1.0 {
        return 1;
    }
    if p <= 0.0 {
        return u64::MAX;
    }
    let ratio = u.ln() / (1.0 - p).ln();
    let c = ratio.ceil();
    if c >= u64::MAX as f64 {
        u64::MAX
    } else {
        (c as u64).max(1)
    }
}

/// Keeps `tau` when it fits in the infectious window `R`, otherwise ∞.
pub fn truncate_phi(tau: u64, recovery: u32) -> ExtendedTime {
    if tau <= u64::from(recovery) {
        ExtendedTime::Finite(tau)
    } else {
        ExtendedTime::Infinite
    }
}
