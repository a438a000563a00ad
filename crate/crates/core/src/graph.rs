//! Contagion Graph: a directed, weighted graph over agents plus one source
//! node per externally infectable agent.
//!
//! An arc `j → i` of weight `τ_ij` says that, once `j` is infected, it
//! takes `τ_ij` steps to infect `i`; the arc `-i → i` carries `τ_ext_i`.
//! Infinite weights are never stored. Infection times are the lengths of
//! shortest paths from the source nodes.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt::Write as _;

use crate::error::GraphError;
use crate::model::{
    geometric_sample, truncate_phi, CoinSource, CoinStream, CurvePoint, EpidemicCurve, ExtendedTime, ExternalSchedule,
    InfectionTimes, Network, EDGE_WEIGHT_TAG,
};

/// Tail of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Agent(usize),
    /// The external source `-i` feeding agent `i`.
    External(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: Node,
    pub to: usize,
    pub weight: u64,
}

/// One realization of the Contagion Graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContagionRealization {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<(usize, u64)>>,
    sources: Vec<(usize, u64)>,
}

impl ContagionRealization {
    /// Validates an explicit arc set.
    pub fn from_arcs(n: usize, arcs: Vec<Arc>) -> Result<Self, GraphError> {
        let mut g = Self {
            n,
            arcs: Vec::with_capacity(arcs.len()),
            out: vec![Vec::new(); n],
            sources: Vec::new(),
        };
        let mut seen = HashSet::new();
        for arc in arcs {
            g.push(arc, &mut seen)?;
        }
        Ok(g)
    }

    fn push(&mut self, arc: Arc, seen: &mut HashSet<(Node, usize)>) -> Result<(), GraphError> {
        if arc.to >= self.n {
            return Err(GraphError::UnknownAgent(arc.to as i64 + 1));
        }
        if arc.weight == 0 {
            return Err(GraphError::InvalidWeight { line: 0 });
        }
        if !seen.insert((arc.from, arc.to)) {
            return Err(GraphError::DuplicateArc { to: arc.to });
        }
        match arc.from {
            Node::Agent(j) => {
                if j >= self.n {
                    return Err(GraphError::UnknownAgent(j as i64 + 1));
                }
                if j == arc.to {
                    return Err(GraphError::SelfArc(j));
                }
                self.out[j].push((arc.to, arc.weight));
            }
            Node::External(i) => {
                if i != arc.to {
                    return Err(GraphError::MisroutedExternal(i));
                }
                self.sources.push((i, arc.weight));
            }
        }
        self.arcs.push(arc);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Agent-to-agent arcs (the set `A1`).
    pub fn agent_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| matches!(a.from, Node::Agent(_)))
    }

    /// External arcs `(-i, i)` with their weights `τ_ext_i`.
    pub fn sources(&self) -> &[(usize, u64)] {
        &self.sources
    }

    pub fn has_sources(&self) -> bool {
        !self.sources.is_empty()
    }

    pub fn weight(&self, from: Node, to: usize) -> ExtendedTime {
        self.arcs
            .iter()
            .find(|a| a.from == from && a.to == to)
            .map_or(ExtendedTime::Infinite, |a| ExtendedTime::Finite(a.weight))
    }

    pub fn out_arcs(&self, j: usize) -> &[(usize, u64)] {
        &self.out[j]
    }

    /// Checks that every agent arc joins network neighbors.
    pub fn respects(&self, net: &Network) -> bool {
        self.n == net.n()
            && self.agent_arcs().all(|a| match a.from {
                Node::Agent(j) => net.edge_between(j, a.to).is_some(),
                Node::External(_) => true,
            })
    }

    /// Plain-text arc list `src dst weight`, one-based ids, external nodes negative.
    pub fn to_arc_list(&self) -> String {
        let mut s = String::new();
        for a in &self.arcs {
            let src = match a.from {
                Node::Agent(j) => j as i64 + 1,
                Node::External(i) => -(i as i64 + 1),
            };
            let _ = writeln!(s, "{src} {} {}", a.to + 1, a.weight);
        }
        s
    }
}

/// Parses an arc list. Blank lines and lines starting with `#` are skipped.
/// Without `n`, the agent count is the largest id mentioned.
pub fn parse_arc_list(text: &str, n: Option<usize>) -> Result<ContagionRealization, GraphError> {
    let mut parsed = Vec::new();
    let mut max_id = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GraphError::Parse {
                line: line_no,
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let parse_i = |s: &str| {
            s.parse::<i64>().map_err(|e| GraphError::Parse {
                line: line_no,
                reason: e.to_string(),
            })
        };
        let src = parse_i(fields[0])?;
        let dst = parse_i(fields[1])?;
        let weight: u64 = fields[2]
            .parse()
            .map_err(|_| GraphError::InvalidWeight { line: line_no })?;
        if weight == 0 {
            return Err(GraphError::InvalidWeight { line: line_no });
        }
        if dst <= 0 {
            return Err(GraphError::UnknownAgent(dst));
        }
        let to = (dst - 1) as usize;
        let from = match src {
            0 => return Err(GraphError::UnknownAgent(0)),
            s if s > 0 => Node::Agent((s - 1) as usize),
            s => Node::External((-s - 1) as usize),
        };
        max_id = max_id.max(to + 1).max(src.unsigned_abs() as usize);
        parsed.push(Arc { from, to, weight });
    }
    ContagionRealization::from_arcs(n.unwrap_or(max_id), parsed)
}

/// Truncated geometric law of `τ_ij`: `p(1-p)^(τ-1)` on `1..=R`, `(1-p)^R` at ∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauDistribution {
    pub p: f64,
    pub recovery: u32,
}

impl TauDistribution {
    pub fn mass(&self, tau: ExtendedTime) -> f64 {
        match tau {
            ExtendedTime::Finite(t) if t >= 1 && t <= u64::from(self.recovery) => {
                self.p * (1.0 - self.p).powi(t as i32 - 1)
            }
            ExtendedTime::Finite(_) => 0.0,
            ExtendedTime::Infinite => (1.0 - self.p).powi(self.recovery as i32),
        }
    }

    /// Support points with nonzero mass, finite values first.
    pub fn support(&self) -> Vec<(ExtendedTime, f64)> {
        (1..=u64::from(self.recovery))
            .map(ExtendedTime::Finite)
            .chain(std::iter::once(ExtendedTime::Infinite))
            .map(|t| (t, self.mass(t)))
            .filter(|&(_, m)| m > 0.0)
            .collect()
    }
}

pub fn tau_distribution(p: f64, recovery: u32) -> TauDistribution {
    TauDistribution { p, recovery }
}

/// `φ_R(⌈log_{1-p} u⌉)`, with `p = 1 → 1` and `p = 0 → ∞`.
pub fn sample_edge_weight(p: f64, recovery: u32, u: f64) -> ExtendedTime {
    if p <= 0.0 {
        return ExtendedTime::Infinite;
    }
    if p >= 1.0 {
        return ExtendedTime::Finite(1);
    }
    truncate_phi(geometric_sample(p, u), recovery)
}

/// Samples a realization: for each ordered neighbor pair `(j, i)` the weight
/// uses `p_ij`, the source's recovery time `R_j` and a direction-specific
/// uniform. External arcs carry `τ_ext_i`.
///
/// A schedule without sources yields a graph with no sources, in which every
/// agent is unreachable.
pub fn build_realization(net: &Network, ext: &ExternalSchedule, coins: &CoinStream) -> ContagionRealization {
    build_realization_counted(net, ext, coins).0
}

/// [`build_realization`] plus the number of weights sampled.
pub fn build_realization_counted(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &CoinStream,
) -> (ContagionRealization, u64) {
    let mut ops = 0;
    let mut arcs = Vec::with_capacity(2 * net.edge_count() + ext.source_count());
    for e in net.edges() {
        for (j, i) in [(e.a, e.b), (e.b, e.a)] {
            ops += 1;
            let u = coins.uniform(EDGE_WEIGHT_TAG, j, i);
            if let ExtendedTime::Finite(w) = sample_edge_weight(e.p, net.recovery_of(j), u) {
                arcs.push(Arc {
                    from: Node::Agent(j),
                    to: i,
                    weight: w,
                });
            }
        }
    }
    for (i, t) in ext.sources() {
        ops += 1;
        arcs.push(Arc {
            from: Node::External(i),
            to: i,
            weight: t,
        });
    }
    let g = ContagionRealization::from_arcs(net.n(), arcs).expect("sampled arcs are valid by construction");
    (g, ops)
}

/// `1 + (h* - k_j)` for the first `h*` in `k_j ..= k_j + R_j - 1` whose coin
/// on the edge is 1, or ∞ if there is none.
pub fn edge_weight_from_coins<C: CoinSource>(
    coins: &C,
    net: &Network,
    edge_index: usize,
    k_j: u64,
    recovery_j: u32,
) -> ExtendedTime {
    let edge = &net.edges()[edge_index];
    (k_j..k_j + u64::from(recovery_j))
        .find(|&h| coins.coin(edge, edge_index, h))
        .map_or(ExtendedTime::Infinite, |h| ExtendedTime::Finite(1 + h - k_j))
}

/// Builds the realization whose weights are read off the very coins another
/// engine consumed, using each source's realized infection time.
/// Sources that were never infected get no out-arcs.
pub fn coupled_realization<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    times: &InfectionTimes,
) -> ContagionRealization {
    let mut arcs = Vec::new();
    for (idx, e) in net.edges().iter().enumerate() {
        for (j, i) in [(e.a, e.b), (e.b, e.a)] {
            let ExtendedTime::Finite(k_j) = times.get(j) else {
                continue;
            };
            if let ExtendedTime::Finite(w) = edge_weight_from_coins(coins, net, idx, k_j, net.recovery_of(j)) {
                arcs.push(Arc {
                    from: Node::Agent(j),
                    to: i,
                    weight: w,
                });
            }
        }
    }
    for (i, t) in ext.sources() {
        arcs.push(Arc {
            from: Node::External(i),
            to: i,
            weight: t,
        });
    }
    ContagionRealization::from_arcs(net.n(), arcs).expect("coupled arcs are valid by construction")
}

/// Work done by a shortest-path sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub pushes: u64,
    pub pops: u64,
    pub relaxations: u64,
    /// Array cells scanned by the dense variant.
    pub scans: u64,
}

impl SearchStats {
    pub fn total(&self) -> u64 {
        self.pushes + self.pops + self.relaxations + self.scans
    }

    fn add(&mut self, other: SearchStats) {
        self.pushes += other.pushes;
        self.pops += other.pops;
        self.relaxations += other.relaxations;
        self.scans += other.scans;
    }
}

fn to_times(dist: Vec<Option<u64>>) -> InfectionTimes {
    InfectionTimes::new(dist.into_iter().map(ExtendedTime::from).collect())
}

fn heap_sweep(g: &ContagionRealization, starts: &[(usize, u64)]) -> (Vec<Option<u64>>, SearchStats) {
    let mut stats = SearchStats::default();
    let mut dist: Vec<Option<u64>> = vec![None; g.n];
    let mut heap = BinaryHeap::new();
    for &(i, w) in starts {
        if dist[i].is_none_or(|d| w < d) {
            dist[i] = Some(w);
            heap.push(Reverse((w, i)));
            stats.pushes += 1;
        }
    }
    while let Some(Reverse((d, j))) = heap.pop() {
        stats.pops += 1;
        if dist[j] != Some(d) {
            continue;
        }
        for &(i, w) in &g.out[j] {
            stats.relaxations += 1;
            let cand = d + w;
            if dist[i].is_none_or(|cur| cand < cur) {
                dist[i] = Some(cand);
                heap.push(Reverse((cand, i)));
                stats.pushes += 1;
            }
        }
    }
    (dist, stats)
}

fn dense_sweep(g: &ContagionRealization, starts: &[(usize, u64)]) -> (Vec<Option<u64>>, SearchStats) {
    let mut stats = SearchStats::default();
    let n = g.n;
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut done = vec![false; n];
    for &(i, w) in starts {
        if dist[i].is_none_or(|d| w < d) {
            dist[i] = Some(w);
        }
    }
    loop {
        let mut best: Option<(u64, usize)> = None;
        for i in 0..n {
            stats.scans += 1;
            if let (false, Some(d)) = (done[i], dist[i]) {
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        let Some((d, j)) = best else { break };
        done[j] = true;
        for &(i, w) in &g.out[j] {
            stats.relaxations += 1;
            let cand = d + w;
            if dist[i].is_none_or(|cur| cand < cur) {
                dist[i] = Some(cand);
            }
        }
    }
    (dist, stats)
}

/// Shortest-path infection times via one binary-heap sweep from a
/// zero-weight super-source attached to every external node.
pub fn shortest_infection_times(g: &ContagionRealization) -> InfectionTimes {
    shortest_infection_times_counted(g).0
}

pub fn shortest_infection_times_counted(g: &ContagionRealization) -> (InfectionTimes, SearchStats) {
    let (dist, stats) = heap_sweep(g, &g.sources);
    (to_times(dist), stats)
}

/// Dense `O(n²)` array Dijkstra from the super-source.
pub fn shortest_infection_times_dense(g: &ContagionRealization) -> (InfectionTimes, SearchStats) {
    let (dist, stats) = dense_sweep(g, &g.sources);
    (to_times(dist), stats)
}

/// One Dijkstra run per external node, then the pointwise minimum.
pub fn per_source_infection_times(g: &ContagionRealization, dense: bool) -> (InfectionTimes, SearchStats) {
    let mut best: Vec<Option<u64>> = vec![None; g.n];
    let mut total = SearchStats::default();
    for &src in &g.sources {
        let (dist, stats) = if dense {
            dense_sweep(g, &[src])
        } else {
            heap_sweep(g, &[src])
        };
        total.add(stats);
        for (b, d) in best.iter_mut().zip(dist) {
            if let Some(d) = d {
                *b = Some(b.map_or(d, |cur| cur.min(d)));
            }
        }
    }
    (to_times(best), total)
}

/// Infected count `Σ_i ρ(k - k_i + 1) - ρ(k - k_i - R_i)`, i.e. agent `i` is
/// counted on `k_i ..= k_i + R_i`, and removed afterwards.
pub fn curve_from_infection_times(times: &InfectionTimes, recovery: &[u32], horizon: u64) -> EpidemicCurve {
    let n = times.len();
    (0..=horizon)
        .map(|k| {
            let mut infected = 0;
            let mut recovered = 0;
            for (t, &r) in times.iter().zip(recovery) {
                if let ExtendedTime::Finite(ki) = t {
                    let end = ki + u64::from(r);
                    if k >= ki && k <= end {
                        infected += 1;
                    } else if k > end {
                        recovered += 1;
                    }
                }
            }
            CurvePoint {
                k,
                susceptible: n - infected - recovered,
                infected,
                recovered,
            }
        })
        .collect()
}

/// `φ_R(⌈log_{1-p}(1-β)⌉)`: the smallest `τ` with `P(τ ≥ τ_ij) ≥ β`.
pub fn approx_weight(p: f64, recovery: u32, beta: f64) -> ExtendedTime {
    if p <= 0.0 {
        return ExtendedTime::Infinite;
    }
    if p >= 1.0 {
        return ExtendedTime::Finite(1);
    }
    let ratio = (1.0 - beta).ln() / (1.0 - p).ln();
    let tau = if ratio.is_finite() {
        (ratio.ceil() as u64).max(1)
    } else {
        u64::MAX
    };
    truncate_phi(tau, recovery)
}

/// Deterministic realization with every arc at its β-quantile weight.
pub fn build_approx_graph(
    net: &Network,
    ext: &ExternalSchedule,
    beta: f64,
) -> Result<ContagionRealization, GraphError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(GraphError::InvalidBeta(beta));
    }
    let mut arcs = Vec::new();
    for e in net.edges() {
        for (j, i) in [(e.a, e.b), (e.b, e.a)] {
            if let ExtendedTime::Finite(w) = approx_weight(e.p, net.recovery_of(j), beta) {
                arcs.push(Arc {
                    from: Node::Agent(j),
                    to: i,
                    weight: w,
                });
            }
        }
    }
    for (i, t) in ext.sources() {
        arcs.push(Arc {
            from: Node::External(i),
            to: i,
            weight: t,
        });
    }
    ContagionRealization::from_arcs(net.n(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_network, Edge};

    const FIVE_AGENT: &str = "1 2 3\n2 1 2\n2 3 3\n3 4 2\n4 5 1\n5 4 2\n5 2 3\n-1 1 1\n-4 4 3\n";

    fn fin(v: &[u64]) -> Vec<ExtendedTime> {
        v.iter().copied().map(ExtendedTime::Finite).collect()
    }

    #[test]
    fn tau_distribution_examples() {
        let d = tau_distribution(0.5, 2);
        assert_eq!(
            d.support(),
            vec![
                (ExtendedTime::Finite(1), 0.5),
                (ExtendedTime::Finite(2), 0.25),
                (ExtendedTime::Infinite, 0.25)
            ]
        );
        assert_eq!(tau_distribution(1.0, 3).support(), vec![(ExtendedTime::Finite(1), 1.0)]);
        assert_eq!(tau_distribution(0.0, 3).support(), vec![(ExtendedTime::Infinite, 1.0)]);
        for (p, r) in [(0.2, 3), (0.37, 11), (0.8, 5), (0.01, 40)] {
            let total: f64 = tau_distribution(p, r).support().iter().map(|s| s.1).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
        assert_eq!(tau_distribution(0.5, 2).mass(ExtendedTime::Finite(3)), 0.0);
    }

    #[test]
    fn sample_edge_weight_examples() {
        assert_eq!(sample_edge_weight(0.2, 3, 0.5), ExtendedTime::Infinite);
        assert_eq!(sample_edge_weight(0.2, 5, 0.5), ExtendedTime::Finite(4));
        assert_eq!(sample_edge_weight(1.0, 1, 0.999), ExtendedTime::Finite(1));
        assert_eq!(sample_edge_weight(0.0, 9, 0.001), ExtendedTime::Infinite);
    }

    #[test]
    fn fixture_round_trips_and_solves() {
        let g = parse_arc_list(FIVE_AGENT, None).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.to_arc_list(), FIVE_AGENT);
        assert_eq!(
            shortest_infection_times(&g).as_slice(),
            fin(&[1, 4, 7, 3, 4]).as_slice()
        );
        assert_eq!(shortest_infection_times_dense(&g).0, shortest_infection_times(&g));
        assert_eq!(per_source_infection_times(&g, false).0, shortest_infection_times(&g));
        assert_eq!(g.weight(Node::Agent(1), 4), ExtendedTime::Infinite);
        assert_eq!(g.weight(Node::Agent(2), 1), ExtendedTime::Infinite);
        assert_eq!(g.weight(Node::Agent(3), 2), ExtendedTime::Infinite);
    }

    #[test]
    fn arc_list_errors() {
        assert!(matches!(
            parse_arc_list("1 2", None),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_arc_list("1 2 0", None),
            Err(GraphError::InvalidWeight { line: 1 })
        ));
        assert!(matches!(parse_arc_list("1 1 2", None), Err(GraphError::SelfArc(0))));
        assert!(matches!(
            parse_arc_list("-1 2 2", None),
            Err(GraphError::MisroutedExternal(0))
        ));
        assert!(matches!(
            parse_arc_list("1 2 1\n1 2 3", None),
            Err(GraphError::DuplicateArc { to: 1 })
        ));
        assert!(matches!(
            parse_arc_list("1 9 1", Some(3)),
            Err(GraphError::UnknownAgent(9))
        ));
        assert!(parse_arc_list("# comment\n\n1 2 1\n", None).is_ok());
    }

    #[test]
    fn trivial_graphs() {
        let g = ContagionRealization::from_arcs(3, vec![]).unwrap();
        assert!(shortest_infection_times(&g).iter().all(|t| t == ExtendedTime::Infinite));
        let g = parse_arc_list("-1 1 5\n", None).unwrap();
        assert_eq!(shortest_infection_times(&g).as_slice(), &[ExtendedTime::Finite(5)]);
    }

    #[test]
    fn realization_structure() {
        let net = build_network(3, &[(0, 1, 0.0), (1, 2, 0.0)], &[3; 3]).unwrap();
        let ext = ExternalSchedule::from_pairs(3, &[(0, 1)]).unwrap();
        let g = build_realization(&net, &ext, &CoinStream::new(4));
        assert_eq!(g.agent_arcs().count(), 0);
        assert_eq!(g.sources(), &[(0, 1)]);

        let net = build_network(1, &[], &[3]).unwrap();
        let ext = ExternalSchedule::from_pairs(1, &[(0, 1)]).unwrap();
        let g = build_realization(&net, &ext, &CoinStream::new(4));
        assert_eq!(
            g.arcs(),
            &[Arc {
                from: Node::External(0),
                to: 0,
                weight: 1
            }]
        );

        let edges = [(1, 0, 0.6), (1, 2, 0.6), (2, 3, 0.6), (4, 3, 0.6), (4, 1, 0.6)];
        let net = build_network(5, &edges, &[3; 5]).unwrap();
        let ext = ExternalSchedule::from_pairs(5, &[(0, 1), (3, 3)]).unwrap();
        for seed in 0..20 {
            let g = build_realization(&net, &ext, &CoinStream::new(seed));
            assert!(g.respects(&net));
            assert!(g
                .arcs()
                .iter()
                .all(|a| a.weight >= 1 && a.weight <= 3 || matches!(a.from, Node::External(_))));
            let mut tails: Vec<_> = g.sources().iter().map(|s| s.0).collect();
            tails.sort_unstable();
            assert_eq!(tails, vec![0, 3]);
        }
    }

    struct Pattern(Vec<bool>);
    impl CoinSource for Pattern {
        fn coin(&self, _: &Edge, _: usize, k: u64) -> bool {
            self.0.get(k as usize).copied().unwrap_or(false)
        }
    }

    #[test]
    fn edge_weight_from_coins_examples() {
        let net = build_network(2, &[(0, 1, 0.5)], &[3, 3]).unwrap();
        // coins 0,0,1 at h = k_j, k_j+1, k_j+2 with k_j = 4
        let c = Pattern(vec![false, false, false, false, false, false, true]);
        assert_eq!(edge_weight_from_coins(&c, &net, 0, 4, 3), ExtendedTime::Finite(3));
        let c = Pattern(vec![false; 10]);
        assert_eq!(edge_weight_from_coins(&c, &net, 0, 4, 3), ExtendedTime::Infinite);
        let c = Pattern(vec![false, false, true]);
        assert_eq!(edge_weight_from_coins(&c, &net, 0, 2, 3), ExtendedTime::Finite(1));
        // a hit just outside the window does not count
        let c = Pattern(vec![false, false, false, true]);
        assert_eq!(edge_weight_from_coins(&c, &net, 0, 0, 3), ExtendedTime::Infinite);
    }

    #[test]
    fn curve_examples() {
        let t = InfectionTimes::new(fin(&[2]));
        let curve = curve_from_infection_times(&t, &[3], 8);
        let infected: Vec<_> = curve.iter().map(|c| c.infected).collect();
        assert_eq!(infected, vec![0, 0, 1, 1, 1, 1, 0, 0, 0]);

        let t = InfectionTimes::all_infinite(4);
        assert!(curve_from_infection_times(&t, &[3; 4], 5)
            .iter()
            .all(|c| c.infected == 0 && c.susceptible == 4));

        // Example-3 times with R = 3: brute-force interval count
        let t = InfectionTimes::new(fin(&[1, 4, 7, 3, 4]));
        let curve = curve_from_infection_times(&t, &[3; 5], 12);
        for c in &curve {
            let want = [1u64, 4, 7, 3, 4]
                .iter()
                .filter(|&&ki| c.k >= ki && c.k <= ki + 3)
                .count();
            assert_eq!(c.infected, want);
            assert_eq!(c.susceptible + c.infected + c.recovered, 5);
        }
        assert_eq!(curve[4].infected, 4);
    }

    #[test]
    fn approx_weight_examples() {
        assert_eq!(approx_weight(0.2, 5, 0.5), ExtendedTime::Finite(4));
        assert_eq!(approx_weight(0.8, 3, 0.5), ExtendedTime::Finite(1));
        assert_eq!(approx_weight(0.2, 3, 0.9), ExtendedTime::Infinite);
        assert_eq!(approx_weight(1.0, 3, 0.9), ExtendedTime::Finite(1));
    }

    /// Smallest τ with P(τ_ij ≤ τ) ≥ β by direct search over the pmf.
    fn approx_weight_oracle(p: f64, r: u32, beta: f64) -> ExtendedTime {
        let d = tau_distribution(p, r);
        let mut cdf = 0.0;
        for t in 1..=u64::from(r) {
            cdf += d.mass(ExtendedTime::Finite(t));
            if cdf >= beta - 1e-12 {
                return ExtendedTime::Finite(t);
            }
        }
        ExtendedTime::Infinite
    }

    #[test]
    fn approx_weight_matches_cdf_search() {
        for &p in &[0.05, 0.2, 0.33, 0.5, 0.8, 0.95] {
            for &beta in &[0.1, 0.3, 0.5, 0.7, 0.9] {
                for r in 1..15 {
                    assert_eq!(
                        approx_weight(p, r, beta),
                        approx_weight_oracle(p, r, beta),
                        "p={p} beta={beta} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_beta_gives_unit_weights() {
        let edges = [(0, 1, 0.3), (1, 2, 0.4), (2, 0, 0.5)];
        let net = build_network(3, &edges, &[4; 3]).unwrap();
        let ext = ExternalSchedule::from_pairs(3, &[(0, 1)]).unwrap();
        let g = build_approx_graph(&net, &ext, 0.25).unwrap();
        assert_eq!(g.agent_arcs().count(), 6);
        assert!(g.agent_arcs().all(|a| a.weight == 1));
        assert!(build_approx_graph(&net, &ext, 1.0).is_err());
        assert!(build_approx_graph(&net, &ext, 0.0).is_err());
    }
}
