//! The time-stepping engine on one random network under three parameter
//! settings: low infectivity with short recovery, long recovery, and high
//! infectivity.

use contagion::discrete::{epidemic_curve, run};
use contagion::generate::{generate_network, NetworkKind};
use contagion::{CoinStream, ExternalSchedule, TransmissionWindowMode};

fn main() {
    let settings = [
        ("p=0.2, R in [3,5]", 0.2, (3, 5)),
        ("p=0.2, R in [3,30]", 0.2, (3, 30)),
        ("p=0.5, R in [3,5]", 0.5, (3, 5)),
    ];
    for (label, p, recovery) in settings {
        let g = generate_network(NetworkKind::ErdosRenyi, 50, 0.08, p, recovery, 4).unwrap();
        let net = g.network;
        let ext = ExternalSchedule::from_pairs(net.n(), &[(0, 1)]).unwrap();
        let traj = run(
            &net,
            &ext,
            &CoinStream::new(1),
            net.duration_bound(&ext),
            TransmissionWindowMode::GraphConsistent,
        );
        let curve = epidemic_curve(&traj);
        let peak = curve.iter().max_by_key(|c| c.infected).unwrap();
        let last = curve.last().unwrap();
        println!(
            "{label:<20} peak {:>2} infected at k={:<3} absorbed at k={:<4} never infected: {}",
            peak.infected,
            peak.k,
            traj.absorbed_at().unwrap(),
            last.susceptible
        );
    }
}
