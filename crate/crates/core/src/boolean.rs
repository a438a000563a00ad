//! Boolean-algebra engine.
//!
//! ```text
//! xb(k+1) = (W(k) ∧ xb(k)) ⊙ ¬yb(k)
//! yb(k+1) = yb(k) ∨ xb(k - R + 1)
//! ```
//!
//! Past infection bits live in one fixed-length shift register per agent,
//! so the state has `n + Σ R_i` infection bits plus `n` recovery bits at
//! every step. The engine models a closed population: it is seeded through
//! `xb(0)` and takes no external input.

use crate::bits::{BitMatrix, BitVector};
use crate::error::SimError;
use crate::model::{CoinSource, CoinStream, ExtendedTime, ExternalSchedule, InfectionTimes, Network};

/// `W(k)`: unit diagonal, shared coins on network edges, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatrix(BitMatrix);

impl CoefficientMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.0
    }
}

pub fn build_coefficient_matrix<C: CoinSource>(net: &Network, coins: &C, k: u64) -> CoefficientMatrix {
    let mut m = BitMatrix::identity(net.n());
    for (idx, e) in net.edges().iter().enumerate() {
        if coins.coin(e, idx, k) {
            m.set(e.a, e.b, true);
            m.set(e.b, e.a, true);
        }
    }
    CoefficientMatrix(m)
}

/// Last `R` infection bits of one agent, oldest first to be overwritten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftRegister {
    slots: BitVector,
    head: usize,
}

impl ShiftRegister {
    fn new(len: usize) -> Self {
        Self {
            slots: BitVector::zeros(len),
            head: 0,
        }
    }

    /// `xb(k - R + 1)`.
    pub fn oldest(&self) -> bool {
        self.slots.get(self.head)
    }

    fn push(&mut self, bit: bool) {
        self.slots.set(self.head, bit);
        self.head = (self.head + 1) % self.slots.len();
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanState {
    pub k: u64,
    pub xb: BitVector,
    pub yb: BitVector,
    pub history: Vec<ShiftRegister>,
}

impl BooleanState {
    /// `xb(0)` from the seed set, `yb(0) = 0`, and `xb(k) = 0` for `k < 0`.
    pub fn new(net: &Network, patient_zero: &[usize]) -> Self {
        let mut xb = BitVector::zeros(net.n());
        for &i in patient_zero {
            xb.set(i, true);
        }
        let mut history: Vec<ShiftRegister> = net.recovery().iter().map(|&r| ShiftRegister::new(r as usize)).collect();
        for (i, reg) in history.iter_mut().enumerate() {
            reg.push(xb.get(i));
        }
        Self {
            k: 0,
            xb,
            yb: BitVector::zeros(net.n()),
            history,
        }
    }

    pub fn n(&self) -> usize {
        self.xb.len()
    }

    /// Bits held per step: `xb`, the older history bits and `yb`.
    pub fn stored_bits(&self) -> usize {
        let history: usize = self.history.iter().map(ShiftRegister::len).sum();
        self.n() + history + self.n()
    }

    /// `n + Σ R_i`, the dimension of the infection part of the state.
    pub fn infection_dimension(&self) -> usize {
        self.history.iter().map(ShiftRegister::len).sum::<usize>() + self.n()
    }

    fn oldest_vector(&self) -> BitVector {
        let mut v = BitVector::zeros(self.n());
        for (i, reg) in self.history.iter().enumerate() {
            v.set(i, reg.oldest());
        }
        v
    }
}

pub fn boolean_step(state: &BooleanState, w: &CoefficientMatrix) -> Result<BooleanState, SimError> {
    let spread = w.matrix().conj_vector(&state.xb)?;
    let xb = spread.and(&state.yb.not())?;
    let yb = state.yb.or(&state.oldest_vector())?;
    let mut history = state.history.clone();
    for (i, reg) in history.iter_mut().enumerate() {
        reg.push(xb.get(i));
    }
    Ok(BooleanState {
        k: state.k + 1,
        xb,
        yb,
        history,
    })
}

/// `xb` and `yb` for `k = 0 ..= horizon`, stored up to absorption.
#[derive(Clone, Debug)]
pub struct BooleanTrajectory {
    horizon: u64,
    xb: Vec<BitVector>,
    yb: Vec<BitVector>,
    absorbed: bool,
    time_offset: u64,
}

impl BooleanTrajectory {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    fn idx(&self, k: u64) -> usize {
        (k as usize).min(self.xb.len() - 1)
    }

    pub fn xb(&self, k: u64) -> &BitVector {
        &self.xb[self.idx(k)]
    }

    pub fn yb(&self, k: u64) -> &BitVector {
        &self.yb[self.idx(k)]
    }

    pub fn absorbed(&self) -> bool {
        self.absorbed
    }

    /// `k_i` on the engine's own clock plus the adapter's time shift.
    pub fn infection_times(&self) -> Result<InfectionTimes, SimError> {
        if !self.absorbed {
            return Err(SimError::HorizonTooShort { horizon: self.horizon });
        }
        let n = self.xb[0].len();
        let mut times = vec![ExtendedTime::Infinite; n];
        for (k, x) in self.xb.iter().enumerate() {
            for (i, t) in times.iter_mut().enumerate() {
                if x.get(i) && !t.is_finite() {
                    *t = ExtendedTime::Finite(k as u64 + self.time_offset);
                }
            }
        }
        Ok(InfectionTimes::new(times))
    }
}

/// Runs from `xb(0) = patient_zero`, stopping once `xb` is all zero.
pub fn run_boolean<C: CoinSource>(
    net: &Network,
    patient_zero: &[usize],
    coins: &C,
    horizon: u64,
) -> Result<BooleanTrajectory, SimError> {
    let mut state = BooleanState::new(net, patient_zero);
    let mut xb = vec![state.xb.clone()];
    let mut yb = vec![state.yb.clone()];
    while state.xb.any() && state.k < horizon {
        let w = build_coefficient_matrix(net, coins, state.k);
        state = boolean_step(&state, &w)?;
        xb.push(state.xb.clone());
        yb.push(state.yb.clone());
    }
    Ok(BooleanTrajectory {
        horizon,
        absorbed: !state.xb.any(),
        xb,
        yb,
        time_offset: 0,
    })
}

/// Maps an external schedule onto a closed-population start.
///
/// All externally infectable agents must share one time `t0`; they become
/// `xb(0)` and the engine runs on coins shifted by `t0`, so step `k` of the
/// Boolean run corresponds to step `k + t0` of the discrete engine.
pub fn seed_from_schedule(ext: &ExternalSchedule) -> Result<(Vec<usize>, u64), SimError> {
    let mut sources = ext.sources();
    let Some((first, t0)) = sources.next() else {
        return Ok((Vec::new(), 0));
    };
    let mut seeds = vec![first];
    for (i, t) in sources {
        if t != t0 {
            return Err(SimError::UnsupportedSchedule(format!(
                "external times {t0} and {t} differ; the Boolean engine needs a single start time"
            )));
        }
        seeds.push(i);
    }
    Ok((seeds, t0))
}

/// Runs a scenario given by an external schedule through the Boolean engine.
pub fn run_boolean_scheduled(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &CoinStream,
    horizon: u64,
) -> Result<BooleanTrajectory, SimError> {
    let (seeds, t0) = seed_from_schedule(ext)?;
    let shifted = coins.shifted(t0);
    let mut traj = run_boolean(net, &seeds, &shifted, horizon.saturating_sub(t0))?;
    traj.time_offset = t0;
    traj.horizon = horizon;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_network, Edge};

    struct Always(bool);
    impl CoinSource for Always {
        fn coin(&self, _: &Edge, _: usize, _: u64) -> bool {
            self.0
        }
    }

    #[test]
    fn coefficient_matrix_shape() {
        let net = build_network(3, &[], &[1; 3]).unwrap();
        let w = build_coefficient_matrix(&net, &Always(true), 0);
        assert_eq!(w.matrix(), &BitMatrix::identity(3));

        let net = build_network(3, &[(0, 2, 0.5)], &[1; 3]).unwrap();
        let w = build_coefficient_matrix(&net, &Always(true), 4);
        let mut want = BitMatrix::identity(3);
        want.set(0, 2, true);
        want.set(2, 0, true);
        assert_eq!(w.matrix(), &want);
        assert!(w.matrix().is_symmetric());
    }

    #[test]
    fn coefficient_matrix_uses_shared_coins() {
        let edges = [(1, 0, 0.2), (1, 2, 0.2), (2, 3, 0.2), (4, 3, 0.2), (4, 1, 0.2)];
        let net = build_network(5, &edges, &[3; 5]).unwrap();
        let coins = CoinStream::new(77);
        for k in 0..10 {
            let w = build_coefficient_matrix(&net, &coins, k);
            for e in net.edges() {
                assert_eq!(w.matrix().get(e.a, e.b), coins.bernoulli(e.a, e.b, k, e.p));
            }
            assert!((0..5).all(|i| w.matrix().get(i, i)));
            assert!(!w.matrix().get(0, 4));
        }
    }

    #[test]
    fn zero_state_is_absorbing() {
        let net = build_network(2, &[(0, 1, 1.0)], &[2, 2]).unwrap();
        let mut s = BooleanState::new(&net, &[]);
        for k in 0..5 {
            s = boolean_step(&s, &build_coefficient_matrix(&net, &Always(true), k)).unwrap();
            assert!(!s.xb.any());
        }
    }

    #[test]
    fn single_agent_unit_recovery() {
        let net = build_network(1, &[], &[1]).unwrap();
        let w = build_coefficient_matrix(&net, &Always(false), 0);
        let s0 = BooleanState::new(&net, &[0]);
        let s1 = boolean_step(&s0, &w).unwrap();
        assert!(s1.yb.get(0));
        assert!(s1.xb.get(0));
        let s2 = boolean_step(&s1, &w).unwrap();
        assert!(!s2.xb.get(0));
    }

    #[test]
    fn edge_coin_spreads() {
        let net = build_network(2, &[(0, 1, 0.5)], &[3, 3]).unwrap();
        let w = build_coefficient_matrix(&net, &Always(true), 0);
        let s1 = boolean_step(&BooleanState::new(&net, &[0]), &w).unwrap();
        assert_eq!(s1.xb.to_bools(), vec![true, true]);
    }

    #[test]
    fn isolated_patient_zero() {
        let net = build_network(3, &[(1, 2, 1.0)], &[2; 3]).unwrap();
        let traj = run_boolean(&net, &[0], &CoinStream::new(0), 50).unwrap();
        let t = traj.infection_times().unwrap();
        assert_eq!(
            t.as_slice(),
            &[ExtendedTime::Finite(0), ExtendedTime::Infinite, ExtendedTime::Infinite]
        );
    }

    #[test]
    fn certain_contagion_follows_hop_distance() {
        let n = 6;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
        let net = build_network(n, &edges, &[2; 6]).unwrap();
        let traj = run_boolean(&net, &[0], &CoinStream::new(5), 100).unwrap();
        let t = traj.infection_times().unwrap();
        let want: Vec<_> = (0..n as u64).map(ExtendedTime::Finite).collect();
        assert_eq!(t.as_slice(), want.as_slice());
    }

    #[test]
    fn recovery_is_running_disjunction() {
        let edges = [(0, 1, 0.6), (1, 2, 0.6), (2, 3, 0.6), (0, 3, 0.6)];
        let net = build_network(4, &edges, &[2, 3, 1, 4]).unwrap();
        let traj = run_boolean(&net, &[0], &CoinStream::new(11), 200).unwrap();
        for k in 0..30u64 {
            for i in 0..4 {
                let r = u64::from(net.recovery_of(i));
                // yb(k+1) = OR_{t <= k - R + 1} xb(t)
                let want = (0..=k).filter(|&t| t + r <= k + 1).any(|t| traj.xb(t).get(i));
                assert_eq!(traj.yb(k + 1).get(i), want, "agent {i} k {k}");
            }
        }
    }

    #[test]
    fn state_dimension() {
        let net = build_network(3, &[], &[2, 3, 4]).unwrap();
        let s = BooleanState::new(&net, &[]);
        assert_eq!(s.infection_dimension(), 3 + 9);
        assert_eq!(s.stored_bits(), 3 + 9 + 3);
    }

    #[test]
    fn schedule_adapter() {
        let ext = ExternalSchedule::from_pairs(4, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(seed_from_schedule(&ext).unwrap(), (vec![1, 2], 3));
        let ext = ExternalSchedule::from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        assert!(seed_from_schedule(&ext).is_err());
    }

    #[test]
    fn horizon_too_short() {
        let net = build_network(1, &[], &[5]).unwrap();
        let traj = run_boolean(&net, &[0], &CoinStream::new(0), 2).unwrap();
        assert!(traj.infection_times().is_err());
    }
}
