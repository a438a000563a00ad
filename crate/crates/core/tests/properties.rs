use proptest::prelude::*;

use contagion::boolean::run_boolean;
use contagion::discrete::{epidemic_curve, run, run_seeded};
use contagion::graph::{
    approx_weight, build_approx_graph, build_realization, parse_arc_list, per_source_infection_times,
    shortest_infection_times, shortest_infection_times_dense, Arc, ContagionRealization, Node,
};
use contagion::scenario::parse_scenario;
use contagion::{build_network, CoinStream, ExtendedTime, ExternalSchedule, Network, TransmissionWindowMode};

fn network_strategy(max_n: usize) -> impl Strategy<Value = Network> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(
                prop_oneof![Just(0.0), Just(0.3), Just(0.5), Just(0.9), Just(1.0)],
                pairs,
            ),
            proptest::collection::vec(1u32..=5, n),
        )
            .prop_map(move |(mask, ps, recovery)| {
                let mut edges = Vec::new();
                let mut idx = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if mask[idx] {
                            edges.push((i, j, ps[idx]));
                        }
                        idx += 1;
                    }
                }
                build_network(n, &edges, &recovery).unwrap()
            })
    })
}

fn schedule_for(n: usize, raw: &[(usize, u64)]) -> ExternalSchedule {
    let mut ext = ExternalSchedule::none(n);
    for &(a, t) in raw {
        ext.set(a % n, t).unwrap();
    }
    ext
}

/// Arbitrary realization on up to 8 agents with 1..=3 sources.
fn realization_strategy() -> impl Strategy<Value = ContagionRealization> {
    (2usize..=8).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::option::of(1u64..=6), n * n),
            proptest::collection::btree_map(0..n, 1u64..=5, 1..=3),
        )
            .prop_map(move |(weights, sources)| {
                let mut arcs = Vec::new();
                for j in 0..n {
                    for i in 0..n {
                        if let (true, Some(w)) = (i != j, weights[j * n + i]) {
                            arcs.push(Arc {
                                from: Node::Agent(j),
                                to: i,
                                weight: w,
                            });
                        }
                    }
                }
                for (&i, &t) in &sources {
                    arcs.push(Arc {
                        from: Node::External(i),
                        to: i,
                        weight: t,
                    });
                }
                ContagionRealization::from_arcs(n, arcs).unwrap()
            })
    })
}

/// Minimum weight over every simple path from a source, by exhaustive search.
fn enumerate_paths(g: &ContagionRealization) -> Vec<ExtendedTime> {
    fn walk(g: &ContagionRealization, at: usize, cost: u64, visited: &mut Vec<bool>, best: &mut [ExtendedTime]) {
        if ExtendedTime::Finite(cost) < best[at] {
            best[at] = ExtendedTime::Finite(cost);
        }
        for &(next, w) in g.out_arcs(at) {
            if !visited[next] {
                visited[next] = true;
                walk(g, next, cost + w, visited, best);
                visited[next] = false;
            }
        }
    }
    let mut best = vec![ExtendedTime::Infinite; g.n()];
    for &(i, t) in g.sources() {
        let mut visited = vec![false; g.n()];
        visited[i] = true;
        walk(g, i, t, &mut visited, &mut best);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boolean_matches_literal_dynamics(net in network_strategy(10), seed in any::<u64>(), start in 0usize..10) {
        let coins = CoinStream::new(seed);
        let seeds = [start % net.n()];
        let none = ExternalSchedule::none(net.n());
        let horizon = net.duration_bound(&none);
        let d = run_seeded(&net, &none, &coins, &seeds, horizon, TransmissionWindowMode::LiteralDynamics);
        let b = run_boolean(&net, &seeds, &coins, horizon).unwrap();
        for k in 0..=horizon {
            let s = d.state(k);
            prop_assert_eq!(&s.infected, &b.xb(k).to_bools());
            let y: Vec<bool> = (0..net.n()).map(|i| s.stopwatch[i] >= net.recovery_of(i)).collect();
            prop_assert_eq!(y, b.yb(k).to_bools());
        }
    }

    #[test]
    fn shortest_paths_match_exhaustive_paths(g in realization_strategy()) {
        let times = shortest_infection_times(&g);
        let oracle = enumerate_paths(&g);
        prop_assert_eq!(times.as_slice(), oracle.as_slice());
    }

    #[test]
    fn super_source_equals_per_source_minimum(g in realization_strategy()) {
        let heap = shortest_infection_times(&g);
        let (dense, _) = shortest_infection_times_dense(&g);
        let (per_heap, _) = per_source_infection_times(&g, false);
        let (per_dense, _) = per_source_infection_times(&g, true);
        prop_assert_eq!(&heap, &dense);
        prop_assert_eq!(&heap, &per_heap);
        prop_assert_eq!(&heap, &per_dense);
    }

    #[test]
    fn approx_weight_monotone(p in 0.01f64..=1.0, q in 0.01f64..=1.0, b1 in 0.01f64..0.99, b2 in 0.01f64..0.99, r in 1u32..30) {
        let (lo_b, hi_b) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        prop_assert!(approx_weight(p, r, lo_b) <= approx_weight(p, r, hi_b));
        let (lo_p, hi_p) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(approx_weight(hi_p, r, lo_b) <= approx_weight(lo_p, r, lo_b));
    }

    #[test]
    fn approx_times_monotone_in_beta(net in network_strategy(10), raw in proptest::collection::vec((0usize..10, 1u64..5), 1..3), b1 in 0.05f64..0.95, b2 in 0.05f64..0.95) {
        let ext = schedule_for(net.n(), &raw);
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let a = shortest_infection_times(&build_approx_graph(&net, &ext, lo).unwrap());
        let b = shortest_infection_times(&build_approx_graph(&net, &ext, hi).unwrap());
        prop_assert!(a.iter().zip(b.iter()).all(|(x, y)| x <= y));
    }

    #[test]
    fn coins_are_symmetric(seed in any::<u64>(), i in 0usize..1000, j in 0usize..1000, k in 0u64..10_000, p in 0.0f64..=1.0) {
        let c = CoinStream::new(seed);
        prop_assert_eq!(c.bernoulli(i, j, k, p), c.bernoulli(j, i, k, p));
        let u = c.uniform(7, i, j);
        prop_assert!(u > 0.0 && u < 1.0);
    }

    #[test]
    fn curves_conserve_population(net in network_strategy(10), raw in proptest::collection::vec((0usize..10, 1u64..5), 0..3), seed in any::<u64>()) {
        let ext = schedule_for(net.n(), &raw);
        for mode in [TransmissionWindowMode::GraphConsistent, TransmissionWindowMode::LiteralDynamics] {
            let traj = run(&net, &ext, &CoinStream::new(seed), net.duration_bound(&ext), mode);
            for c in epidemic_curve(&traj) {
                prop_assert_eq!(c.susceptible + c.infected + c.recovered, net.n());
            }
        }
    }

    #[test]
    fn realizations_respect_network(net in network_strategy(10), raw in proptest::collection::vec((0usize..10, 1u64..5), 1..3), seed in any::<u64>()) {
        let ext = schedule_for(net.n(), &raw);
        let g = build_realization(&net, &ext, &CoinStream::new(seed));
        prop_assert!(g.respects(&net));
        let text = g.to_arc_list();
        prop_assert_eq!(parse_arc_list(&text, Some(net.n())).unwrap().to_arc_list(), text);
    }

    #[test]
    fn scenario_round_trip(
        net in network_strategy(8),
        raw in proptest::collection::btree_map(1u64..=8, 1u64..20, 0..3),
        seed in any::<u64>(),
        horizon in proptest::option::of(1u64..500),
        replicas in proptest::option::of(1u64..5000),
        literal in any::<bool>(),
    ) {
        let edges: Vec<String> = net.edges().iter().map(|e| format!("[{}, {}, {}]", e.a + 1, e.b + 1, e.p)).collect();
        let external: Vec<String> = raw.iter().filter(|(&a, _)| a as usize <= net.n()).map(|(a, t)| format!("\"{a}\": {t}")).collect();
        let mut doc = format!(
            r#"{{"network": {{"n": {}, "edges": [{}], "recovery": {:?}}}, "external": {{{}}}, "seed": {seed}, "mode": "{}""#,
            net.n(),
            edges.join(", "),
            net.recovery(),
            external.join(", "),
            if literal { "literal_dynamics" } else { "graph_consistent" },
        );
        if let Some(h) = horizon {
            doc.push_str(&format!(r#", "horizon": {h}"#));
        }
        if let Some(r) = replicas {
            doc.push_str(&format!(r#", "replicas": {r}"#));
        }
        doc.push('}');
        let s = parse_scenario(&doc).unwrap();
        prop_assert_eq!(&s.network(), &net);
        prop_assert_eq!(parse_scenario(&s.to_json()).unwrap(), s);
    }
}
