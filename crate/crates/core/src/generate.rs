//! Seeded random contact networks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenerateError;
use crate::model::{build_network, Network};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    /// `G(n, q)`: each pair joined independently with probability `param`.
    ErdosRenyi,
    /// Ring where each agent links to its `param` nearest neighbors per side.
    RingLattice,
}

impl std::str::FromStr for NetworkKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "erdos-renyi" | "erdos_renyi" | "gnp" => Ok(Self::ErdosRenyi),
            "ring-lattice" | "ring_lattice" | "ring" => Ok(Self::RingLattice),
            other => Err(format!("unknown network kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.sizes.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedNetwork {
    pub network: Network,
    pub components: ComponentReport,
}

pub fn components(net: &Network) -> ComponentReport {
    let n = net.n();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &(w, _) in net.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ComponentReport { sizes }
}

/// Generates a network with uniform edge probability `p` and recovery times
/// drawn uniformly from the inclusive range `recovery`.
pub fn generate_network(
    kind: NetworkKind,
    n: usize,
    param: f64,
    p: f64,
    recovery: (u32, u32),
    seed: u64,
) -> Result<GeneratedNetwork, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidParam("n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::InvalidParam(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let (lo, hi) = recovery;
    if lo == 0 || lo > hi {
        return Err(GenerateError::InvalidParam(format!(
            "recovery range [{lo}, {hi}] must satisfy 1 <= lo <= hi"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    match kind {
        NetworkKind::ErdosRenyi => {
            if !(0.0..=1.0).contains(&param) {
                return Err(GenerateError::InvalidParam(format!(
                    "link probability {param} outside [0, 1]"
                )));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(param) {
                        edges.push((i, j, p));
                    }
                }
            }
        }
        NetworkKind::RingLattice => {
            let k = param as usize;
            if param < 1.0 || param.fract() != 0.0 || 2 * k >= n {
                return Err(GenerateError::InvalidParam(format!(
                    "ring lattice needs an integer 1 <= param < n/2, got {param} for n = {n}"
                )));
            }
            for i in 0..n {
                for d in 1..=k {
                    edges.push((i, (i + d) % n, p));
                }
            }
        }
    }
    let recovery: Vec<u32> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let network = build_network(n, &edges, &recovery)?;
    let components = components(&network);
    Ok(GeneratedNetwork { network, components })
}
