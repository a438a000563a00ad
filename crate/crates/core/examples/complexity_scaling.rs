//! Operation counts of the time-stepping engine grow with the horizon while
//! those of the Contagion Graph do not.

use contagion::bench::{check_scaling, run_benchmark, BenchScenario};
use contagion::generate::{generate_network, NetworkKind};
use contagion::output::bench_csv;
use contagion::ExternalSchedule;

fn main() {
    let net = generate_network(NetworkKind::ErdosRenyi, 100, 0.05, 0.2, (3, 5), 0)
        .unwrap()
        .network;
    let ext = ExternalSchedule::from_pairs(100, &[(0, 1)]).unwrap();
    let scenarios: Vec<_> = [100, 200, 400, 800]
        .into_iter()
        .map(|horizon| BenchScenario {
            network: net.clone(),
            external: ext.clone(),
            horizon,
            seed: 0,
        })
        .collect();
    let records = run_benchmark(&scenarios, 3);
    print!("{}", bench_csv(&records));
    for r in check_scaling(&records).unwrap() {
        println!(
            "{:<12} exponent {:.3}  constant: {}",
            r.engine.name(),
            r.exponent,
            r.constant
        );
    }
}
