//! Stochastic SIR epidemics on static contact networks.
//!
//! Three engines compute the same quantities:
//!
//! - [`discrete`]: the synchronous agent dynamics, step by step.
//! - [`boolean`]: the same dynamics written over bit-packed Boolean vectors.
//! - [`graph`]: the Contagion Graph, where infection times are shortest
//!   paths and no time loop is needed.
//!
//! [`montecarlo`] compares their distributions, [`bench`] measures the cost
//! gap, and [`scenario`], [`generate`] and [`output`] handle files.

pub mod bench;
pub mod bits;
pub mod boolean;
pub mod discrete;
pub mod error;
pub mod generate;
pub mod graph;
pub mod model;
pub mod montecarlo;
pub mod output;
pub mod scenario;

pub use error::{BenchError, GenerateError, GraphError, McError, ModelError, ScenarioError, SimError};
pub use model::{
    build_network, geometric_sample, step_function, truncate_phi, AgentId, CoinSource, CoinStream, CurvePoint,
    EpidemicCurve, ExtendedTime, ExternalSchedule, InfectionTimes, Network, TransmissionWindowMode,
};
