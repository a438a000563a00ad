//! One deterministic Contagion Graph with β-quantile weights against a
//! Monte Carlo histogram of the time-stepping engine.

use contagion::graph::{approx_weight, build_approx_graph, shortest_infection_times};
use contagion::montecarlo::{run_montecarlo, Engine};
use contagion::scenario::load_scenario;
use contagion::{ExtendedTime, TransmissionWindowMode};

fn main() {
    for (p, r, beta) in [(0.2, 5, 0.5), (0.8, 3, 0.5), (0.2, 3, 0.9)] {
        println!(
            "approx_weight(p={p}, R={r}, beta={beta}) = {}",
            approx_weight(p, r, beta)
        );
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/low_infectivity.json");
    let s = load_scenario(path.as_ref()).unwrap();
    let (net, ext) = (s.network(), s.schedule());
    let hist = run_montecarlo(
        &net,
        &ext,
        400,
        Engine::Discrete,
        0,
        TransmissionWindowMode::GraphConsistent,
    )
    .unwrap();
    let dist = hist.distribution();

    println!("\nagent  beta=0.3  beta=0.5  beta=0.7  P(never infected)");
    let approx: Vec<_> = [0.3, 0.5, 0.7]
        .iter()
        .map(|&b| shortest_infection_times(&build_approx_graph(&net, &ext, b).unwrap()))
        .collect();
    for i in 0..net.n() {
        println!(
            "{:>5}  {:>8}  {:>8}  {:>8}  {:>8.3}",
            i + 1,
            approx[0].get(i).to_string(),
            approx[1].get(i).to_string(),
            approx[2].get(i).to_string(),
            dist.prob(i, ExtendedTime::Infinite)
        );
    }
}
