//! Seeded network generation with a connected-component report.

use contagion::generate::{generate_network, NetworkKind};
use contagion::scenario::NetworkDoc;

fn main() {
    for (kind, n, param) in [
        (NetworkKind::RingLattice, 12, 2.0),
        (NetworkKind::ErdosRenyi, 100, 0.02),
        (NetworkKind::ErdosRenyi, 100, 0.05),
    ] {
        let g = generate_network(kind, n, param, 0.2, (3, 5), 7).unwrap();
        println!(
            "{kind:?} n={n} param={param}: {} edges, {} components, largest {}",
            g.network.edge_count(),
            g.components.count(),
            g.components.largest()
        );
    }
    let small = generate_network(NetworkKind::RingLattice, 5, 1.0, 0.2, (3, 5), 7).unwrap();
    println!(
        "{}",
        serde_json::to_string(&NetworkDoc::from_network(&small.network)).unwrap()
    );
}
