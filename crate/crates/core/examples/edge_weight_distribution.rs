//! Empirical law of sampled arc weights against the truncated geometric
//! mass function.

use contagion::graph::{sample_edge_weight, tau_distribution};
use contagion::{CoinStream, ExtendedTime};
use std::collections::BTreeMap;

fn main() {
    let samples = 200_000;
    for (p, r) in [(0.2, 3), (0.5, 2), (0.8, 5)] {
        let coins = CoinStream::new(42);
        let mut counts: BTreeMap<ExtendedTime, u64> = BTreeMap::new();
        for s in 0..samples {
            *counts
                .entry(sample_edge_weight(p, r, coins.uniform(1, s, 0)))
                .or_default() += 1;
        }
        println!("p = {p}, R = {r}");
        for (tau, mass) in tau_distribution(p, r).support() {
            let emp = *counts.get(&tau).unwrap_or(&0) as f64 / samples as f64;
            println!("  tau = {tau:>3}  exact {mass:.4}  sampled {emp:.4}");
        }
    }
}
