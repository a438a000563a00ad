//! Infection times of a fixed Contagion Graph realization, read from a
//! `src dst weight` arc list.

use contagion::graph::{parse_arc_list, per_source_infection_times, shortest_infection_times};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/five_agent_arcs.txt");
    let text = std::fs::read_to_string(path).expect("fixture present");
    let g = parse_arc_list(&text, Some(5)).expect("valid arc list");

    let times = shortest_infection_times(&g);
    for (i, k) in times.iter().enumerate() {
        println!("agent {}: k = {k}", i + 1);
    }

    // one Dijkstra per external node gives the same answer
    let (per_source, _) = per_source_infection_times(&g, true);
    assert_eq!(per_source, times);
    print!("\nround trip:\n{}", g.to_arc_list());
}
