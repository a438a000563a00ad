//! Reading Contagion Graph weights off the coins a discrete run consumed
//! gives the same infection times, sample by sample.

use contagion::discrete::simulate_infection_times;
use contagion::generate::{generate_network, NetworkKind};
use contagion::graph::{coupled_realization, shortest_infection_times};
use contagion::{CoinStream, ExternalSchedule, TransmissionWindowMode};

fn main() {
    let net = generate_network(NetworkKind::ErdosRenyi, 25, 0.15, 0.3, (2, 6), 2)
        .unwrap()
        .network;
    let ext = ExternalSchedule::from_pairs(net.n(), &[(0, 1), (7, 4)]).unwrap();
    let horizon = net.duration_bound(&ext);
    let mut infected = 0;
    for seed in 0..200 {
        let coins = CoinStream::new(seed);
        let discrete =
            simulate_infection_times(&net, &ext, &coins, horizon, TransmissionWindowMode::GraphConsistent).unwrap();
        let graph = shortest_infection_times(&coupled_realization(&net, &ext, &coins, &discrete));
        assert_eq!(discrete, graph, "seed {seed}");
        infected += discrete.infected_count();
    }
    println!(
        "200 seeds agree; mean outbreak size {:.2} of {}",
        infected as f64 / 200.0,
        net.n()
    );
}
