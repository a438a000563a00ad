//! The Boolean-matrix engine and the time-stepping engine driven by the same
//! coins produce the same infection and recovery bits at every step.

use contagion::boolean::{run_boolean, BooleanState};
use contagion::discrete::run_seeded;
use contagion::generate::{generate_network, NetworkKind};
use contagion::{CoinStream, ExternalSchedule, TransmissionWindowMode};

fn main() {
    let net = generate_network(NetworkKind::RingLattice, 20, 2.0, 0.3, (2, 4), 9)
        .unwrap()
        .network;
    let coins = CoinStream::new(5);
    let horizon = 200;
    let none = ExternalSchedule::none(net.n());

    let discrete = run_seeded(
        &net,
        &none,
        &coins,
        &[0],
        horizon,
        TransmissionWindowMode::LiteralDynamics,
    );
    let boolean = run_boolean(&net, &[0], &coins, horizon).unwrap();

    let steps = boolean.horizon().min(discrete.absorbed_at().unwrap());
    for k in 0..=steps {
        let s = discrete.state(k);
        for i in 0..net.n() {
            assert_eq!(s.infected[i], boolean.xb(k).get(i));
            assert_eq!(s.stopwatch[i] >= net.recovery_of(i), boolean.yb(k).get(i));
        }
    }
    let state = BooleanState::new(&net, &[0]);
    println!("{} steps identical on {} agents", steps + 1, net.n());
    println!(
        "Boolean state: {} stored bits, infection dimension {}",
        state.stored_bits(),
        state.infection_dimension()
    );
    println!(
        "infection times: {:?}",
        boolean
            .infection_times()
            .unwrap()
            .as_slice()
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
    );
}
