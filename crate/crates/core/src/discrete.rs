//! Synchronous discrete-time engine.
//!
//! Each step evaluates, for every agent `i`,
//!
//! ```text
//! x_i(k+1) = ρ(R_i - s_i(k)) · ρ(x_i(k) + Σ_j w_ij(k) x_j(k) g_j(k) + u_i(k))
//! s_i(k+1) = s_i(k) + x_i(k)
//! y_i(k)   = 1 - ρ(R_i - s_i(k))
//! ```
//!
//! where the source gate `g_j` depends on the [`TransmissionWindowMode`].

use crate::error::SimError;
use crate::model::{
    CoinSource, CurvePoint, EpidemicCurve, ExtendedTime, ExternalSchedule, InfectionTimes, Network,
    TransmissionWindowMode,
};

/// Agent state at one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationState {
    pub k: u64,
    pub infected: Vec<bool>,
    pub stopwatch: Vec<u32>,
    /// `y_i(k) = 1 - ρ(R_i - s_i(k))`; true from step `k_i + R_i` on.
    pub recovered: Vec<bool>,
}

impl SimulationState {
    pub fn n(&self) -> usize {
        self.infected.len()
    }

    pub fn infected_count(&self) -> usize {
        self.infected.iter().filter(|&&x| x).count()
    }

    /// Agents done with the disease: stopwatch saturated at `R_i + 1`.
    pub fn removed(&self, i: usize) -> bool {
        self.recovered[i] && !self.infected[i]
    }
}

/// One consumed contagion coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoinDraw {
    pub edge: usize,
    pub k: u64,
    pub bit: bool,
}

pub fn init_state(net: &Network, initial_infected: &[usize]) -> SimulationState {
    let mut infected = vec![false; net.n()];
    for &i in initial_infected {
        infected[i] = true;
    }
    SimulationState {
        k: 0,
        infected,
        stopwatch: vec![0; net.n()],
        recovered: vec![false; net.n()],
    }
}

fn transmitting(state: &SimulationState, net: &Network, j: usize, mode: TransmissionWindowMode) -> bool {
    state.infected[j]
        && match mode {
            TransmissionWindowMode::LiteralDynamics => true,
            TransmissionWindowMode::GraphConsistent => state.stopwatch[j] < net.recovery_of(j),
        }
}

/// Advances one step, recording consumed coins and counting operations
/// (one per edge examined, one per agent updated).
pub fn step_counted<C: CoinSource>(
    state: &SimulationState,
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    mode: TransmissionWindowMode,
    mut log: Option<&mut Vec<CoinDraw>>,
    ops: &mut u64,
) -> SimulationState {
    let n = net.n();
    let k = state.k;
    let mut exposed = vec![false; n];

    for (idx, e) in net.edges().iter().enumerate() {
        *ops += 1;
        let ta = transmitting(state, net, e.a, mode);
        let tb = transmitting(state, net, e.b, mode);
        if !(ta || tb) {
            continue;
        }
        let bit = coins.coin(e, idx, k);
        if let Some(log) = log.as_deref_mut() {
            log.push(CoinDraw { edge: idx, k, bit });
        }
        if bit {
            if ta {
                exposed[e.b] = true;
            }
            if tb {
                exposed[e.a] = true;
            }
        }
    }

    let mut next = SimulationState {
        k: k + 1,
        infected: vec![false; n],
        stopwatch: vec![0; n],
        recovered: vec![false; n],
    };
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        *ops += 1;
        let r = net.recovery_of(i);
        let gate = state.stopwatch[i] < r;
        let pressure = state.infected[i] || exposed[i] || ext.fires_at(i, k);
        next.infected[i] = gate && pressure;
        next.stopwatch[i] = state.stopwatch[i] + u32::from(state.infected[i]);
        next.recovered[i] = next.stopwatch[i] >= r;
    }
    next
}

pub fn step<C: CoinSource>(
    state: &SimulationState,
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    mode: TransmissionWindowMode,
) -> SimulationState {
    let mut ops = 0;
    step_counted(state, net, ext, coins, mode, None, &mut ops)
}

/// No agent infected and no susceptible agent still waiting on an external
/// event: the state can no longer change.
pub fn is_absorbed(state: &SimulationState, ext: &ExternalSchedule) -> bool {
    state.infected.iter().all(|&x| !x)
        && (0..state.n()).all(|i| {
            state.stopwatch[i] > 0
                || match ext.tau(i) {
                    ExtendedTime::Finite(t) => t - 1 < state.k,
                    ExtendedTime::Infinite => true,
                }
        })
}

/// States for `k = 0 ..= horizon`. When the run stopped early it stores
/// states only up to absorption; later steps repeat the last state.
#[derive(Clone, Debug)]
pub struct Trajectory {
    horizon: u64,
    states: Vec<SimulationState>,
    absorbed: bool,
    coin_log: Vec<CoinDraw>,
    recovery: Vec<u32>,
}

impl Trajectory {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// Number of logical states, `horizon + 1`.
    pub fn len(&self) -> usize {
        self.horizon as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, k: u64) -> &SimulationState {
        let idx = (k as usize).min(self.states.len() - 1);
        &self.states[idx]
    }

    pub fn stored_states(&self) -> &[SimulationState] {
        &self.states
    }

    /// Step at which the absorbing state was first reached, if it was.
    pub fn absorbed_at(&self) -> Option<u64> {
        self.absorbed.then(|| self.states.last().map_or(0, |s| s.k))
    }

    pub fn coin_log(&self) -> &[CoinDraw] {
        &self.coin_log
    }

    pub fn recovery(&self) -> &[u32] {
        &self.recovery
    }
}

fn run_inner<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    initial_infected: &[usize],
    horizon: u64,
    mode: TransmissionWindowMode,
) -> Trajectory {
    let mut states = vec![init_state(net, initial_infected)];
    let mut log = Vec::new();
    let mut ops = 0;
    let mut absorbed = is_absorbed(&states[0], ext);
    while !absorbed && states.len() as u64 <= horizon {
        let next = step_counted(states.last().unwrap(), net, ext, coins, mode, Some(&mut log), &mut ops);
        absorbed = is_absorbed(&next, ext);
        states.push(next);
    }
    Trajectory {
        horizon,
        states,
        absorbed,
        coin_log: log,
        recovery: net.recovery().to_vec(),
    }
}

/// Runs from the all-susceptible state, stopping early once absorbed.
pub fn run<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    horizon: u64,
    mode: TransmissionWindowMode,
) -> Trajectory {
    run_inner(net, ext, coins, &[], horizon, mode)
}

/// Runs from a seeded `x(0)`.
pub fn run_seeded<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    initial_infected: &[usize],
    horizon: u64,
    mode: TransmissionWindowMode,
) -> Trajectory {
    run_inner(net, ext, coins, initial_infected, horizon, mode)
}

/// `k_i = min{k : x_i(k) = 1}`.
pub fn infection_times(traj: &Trajectory) -> Result<InfectionTimes, SimError> {
    if !traj.absorbed {
        return Err(SimError::HorizonTooShort { horizon: traj.horizon });
    }
    let n = traj.states[0].n();
    let mut times = vec![ExtendedTime::Infinite; n];
    for s in &traj.states {
        for (i, t) in times.iter_mut().enumerate() {
            if s.infected[i] && !t.is_finite() {
                *t = ExtendedTime::Finite(s.k);
            }
        }
    }
    Ok(InfectionTimes::new(times))
}

/// Susceptible, infected and removed counts for `k = 0 ..= horizon`.
///
/// The recovered column counts agents whose infectious period is over
/// (`y_i(k) = 1` and `x_i(k) = 0`), so the three columns always sum to `n`.
pub fn epidemic_curve(traj: &Trajectory) -> EpidemicCurve {
    (0..=traj.horizon)
        .map(|k| {
            let s = traj.state(k);
            let infected = s.infected_count();
            let recovered = (0..s.n()).filter(|&i| s.removed(i)).count();
            CurvePoint {
                k,
                susceptible: s.n() - infected - recovered,
                infected,
                recovered,
            }
        })
        .collect()
}

/// Infection times without storing the trajectory. Stops at absorption and
/// fails if `horizon` is reached first.
pub fn simulate_infection_times<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    horizon: u64,
    mode: TransmissionWindowMode,
) -> Result<InfectionTimes, SimError> {
    let mut state = init_state(net, &[]);
    let mut times = vec![ExtendedTime::Infinite; net.n()];
    let mut ops = 0;
    loop {
        for (i, t) in times.iter_mut().enumerate() {
            if state.infected[i] && !t.is_finite() {
                *t = ExtendedTime::Finite(state.k);
            }
        }
        if is_absorbed(&state, ext) {
            return Ok(InfectionTimes::new(times));
        }
        if state.k >= horizon {
            return Err(SimError::HorizonTooShort { horizon });
        }
        state = step_counted(&state, net, ext, coins, mode, None, &mut ops);
    }
}

/// Runs exactly `horizon` steps without early termination and returns the
/// operation count (edge examinations plus agent updates).
pub fn count_operations_fixed_horizon<C: CoinSource>(
    net: &Network,
    ext: &ExternalSchedule,
    coins: &C,
    horizon: u64,
    mode: TransmissionWindowMode,
) -> u64 {
    let mut state = init_state(net, &[]);
    let mut ops = 0;
    for _ in 0..horizon {
        state = step_counted(&state, net, ext, coins, mode, None, &mut ops);
    }
    ops
}
