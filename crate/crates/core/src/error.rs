//! Error types for every layer of the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Network and schedule construction failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("network must contain at least one agent")]
    EmptyNetwork,
    #[error("agent {0} is out of range")]
    AgentOutOfRange(usize),
    #[error("self edge on agent {0}")]
    SelfEdge(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{i}, {j}}} has probability {p} outside [0, 1]")]
    ProbabilityOutOfRange { i: usize, j: usize, p: f64 },
    #[error("agent {agent} has recovery time {value}; must be >= 1")]
    NonPositiveRecovery { agent: usize, value: i64 },
    #[error("expected {expected} recovery times, got {got}")]
    RecoveryLengthMismatch { expected: usize, got: usize },
    #[error("external infection time for agent {0} must be >= 1")]
    NonPositiveExternalTime(usize),
}

/// Failures raised by the time-stepping engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("epidemic still active at horizon {horizon}; infection times are unreliable")]
    HorizonTooShort { horizon: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("external schedule cannot be mapped to a closed-population seeding: {0}")]
    UnsupportedSchedule(String),
}

/// Contagion Graph construction and parsing failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("arc weight must be a finite integer >= 1 (line {line})")]
    InvalidWeight { line: usize },
    #[error("arc references agent {0} which is out of range")]
    UnknownAgent(i64),
    #[error("self arc on agent {0}")]
    SelfArc(usize),
    #[error("duplicate arc into agent {to}")]
    DuplicateArc { to: usize },
    #[error("external node -{0} must point to agent {0}")]
    MisroutedExternal(usize),
    #[error("malformed arc list line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("beta must lie in (0, 1); got {0}")]
    InvalidBeta(f64),
}

/// Monte Carlo harness failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("exhaustive enumeration needs {bits} coin bits; limit is {limit}")]
    TooLarge { bits: u64, limit: u64 },
    #[error("replica count must be >= 1")]
    NoReplicas,
    #[error("distributions cover {left} and {right} agents")]
    AgentMismatch { left: usize, right: usize },
}

/// Benchmark analysis failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("engine {engine} has {points} horizon points; need at least 3")]
    InsufficientData { engine: String, points: usize },
}

/// Random network generation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Scenario document failures.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("unknown agent {0} (ids are one-based)")]
    UnknownAgent(i64),
    #[error("engine `approx` requires `beta`")]
    MissingBeta,
    #[error("`beta` is only valid with engine `approx`")]
    BetaNotApplicable,
    #[error("invalid network: {0}")]
    Network(#[from] ModelError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
