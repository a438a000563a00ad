//! Scenario documents.
//!
//! A scenario is one JSON object:
//!
//! ```json
//! {
//!   "network": { "n": 2, "edges": [[1, 2, 0.2]], "recovery": [3, 3] },
//!   "external": { "1": 1 },
//!   "engine": "discrete",
//!   "mode": "graph_consistent",
//!   "seed": 0,
//!   "horizon": 100,
//!   "replicas": 400
//! }
//! ```
//!
//! Agent ids are one-based. `network` may also be a path to a JSON file
//! holding the network object, resolved relative to the scenario file.
//! `beta` is required with engine `approx` and rejected otherwise.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ScenarioError};
use crate::model::{build_network, ExternalSchedule, Network, TransmissionWindowMode};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioEngine {
    #[default]
    Discrete,
    Boolean,
    Graph,
    Approx,
}

/// Network object as written in files: one-based edge endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub n: usize,
    pub edges: Vec<(u64, u64, f64)>,
    pub recovery: Vec<u32>,
}

impl NetworkDoc {
    pub fn from_network(net: &Network) -> Self {
        Self {
            n: net.n(),
            edges: net
                .edges()
                .iter()
                .map(|e| (e.a as u64 + 1, e.b as u64 + 1, e.p))
                .collect(),
            recovery: net.recovery().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Network, ScenarioError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(i, j, p) in &self.edges {
            let a = self.agent(i)?;
            let b = self.agent(j)?;
            edges.push((a, b, p));
        }
        Ok(build_network(self.n, &edges, &self.recovery)?)
    }

    fn agent(&self, id: u64) -> Result<usize, ScenarioError> {
        if id == 0 || id > self.n as u64 {
            return Err(ScenarioError::UnknownAgent(id as i64));
        }
        Ok(id as usize - 1)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    network: serde_json::Value,
    #[serde(default)]
    external: BTreeMap<String, u64>,
    #[serde(default)]
    engine: ScenarioEngine,
    #[serde(default)]
    mode: TransmissionWindowMode,
    #[serde(default)]
    beta: Option<f64>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    horizon: Option<u64>,
    #[serde(default)]
    replicas: Option<u64>,
}

/// A validated scenario. `external` maps one-based agent ids to `τ_ext`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub network: NetworkDoc,
    pub external: BTreeMap<u64, u64>,
    pub engine: ScenarioEngine,
    pub mode: TransmissionWindowMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replicas: Option<u64>,
}

impl Scenario {
    pub fn network(&self) -> Network {
        self.network.build().expect("validated at parse time")
    }

    pub fn schedule(&self) -> ExternalSchedule {
        let pairs: Vec<(usize, u64)> = self.external.iter().map(|(&a, &t)| (a as usize - 1, t)).collect();
        ExternalSchedule::from_pairs(self.network.n, &pairs).expect("validated at parse time")
    }

    /// The configured horizon, or a bound long enough for any epidemic.
    pub fn effective_horizon(&self) -> u64 {
        self.horizon
            .unwrap_or_else(|| self.network().duration_bound(&self.schedule()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        self.network.build()?;
        for (&agent, &tau) in &self.external {
            if agent == 0 || agent > self.network.n as u64 {
                return Err(ScenarioError::UnknownAgent(agent as i64));
            }
            if tau == 0 {
                return Err(ModelError::NonPositiveExternalTime(agent as usize - 1).into());
            }
        }
        match (self.engine, self.beta) {
            (ScenarioEngine::Approx, None) => return Err(ScenarioError::MissingBeta),
            (ScenarioEngine::Approx, Some(b)) if !(b > 0.0 && b < 1.0) => {
                return Err(ScenarioError::Schema {
                    path: "beta".into(),
                    message: format!("must lie in (0, 1), got {b}"),
                })
            }
            (e, Some(_)) if e != ScenarioEngine::Approx => return Err(ScenarioError::BetaNotApplicable),
            _ => {}
        }
        if self.replicas == Some(0) {
            return Err(ScenarioError::Schema {
                path: "replicas".into(),
                message: "must be >= 1".into(),
            });
        }
        if self.horizon == Some(0) {
            return Err(ScenarioError::Schema {
                path: "horizon".into(),
                message: "must be >= 1".into(),
            });
        }
        Ok(())
    }
}

/// Parses a scenario, resolving a network file reference against the
/// current directory.
pub fn parse_scenario(document: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_in(document, None)
}

/// Reads and parses a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = read(path)?;
    parse_scenario_in(&text, path.parent())
}

fn read(path: &Path) -> Result<String, ScenarioError> {
    std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn schema<E: std::fmt::Display>(err: serde_path_to_error::Error<E>) -> ScenarioError {
    let path = err.path().to_string();
    ScenarioError::Schema {
        path,
        message: err.into_inner().to_string(),
    }
}

pub fn parse_scenario_in(document: &str, base: Option<&Path>) -> Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let raw: RawScenario = serde_path_to_error::deserialize(de).map_err(schema)?;

    let (value, shown) = match raw.network {
        serde_json::Value::String(rel) => {
            let path = base.map_or_else(|| PathBuf::from(&rel), |b| b.join(&rel));
            let text = read(&path)?;
            let value = serde_json::from_str(&text).map_err(|e| ScenarioError::Schema {
                path: "network".into(),
                message: format!("{}: {e}", path.display()),
            })?;
            (value, format!("network({rel})"))
        }
        inline => (inline, "network".to_string()),
    };
    let network: NetworkDoc = serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        ScenarioError::Schema {
            path: if inner == "." {
                shown.clone()
            } else {
                format!("{shown}.{inner}")
            },
            message: e.into_inner().to_string(),
        }
    })?;

    let mut external = BTreeMap::new();
    for (key, tau) in raw.external {
        let agent: u64 = key.parse().map_err(|_| ScenarioError::Schema {
            path: format!("external.{key}"),
            message: "agent ids must be positive integers".into(),
        })?;
        external.insert(agent, tau);
    }

    let scenario = Scenario {
        network,
        external,
        engine: raw.engine,
        mode: raw.mode,
        beta: raw.beta,
        seed: raw.seed,
        horizon: raw.horizon,
        replicas: raw.replicas,
    };
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ExtendedTime;

    const MINIMAL: &str = r#"{"network": {"n": 2, "edges": [[1, 2, 0.2]], "recovery": [3, 3]}, "external": {"1": 1}}"#;

    #[test]
    fn minimal_document_applies_defaults() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.engine, ScenarioEngine::Discrete);
        assert_eq!(s.mode, TransmissionWindowMode::GraphConsistent);
        assert_eq!(s.seed, 0);
        assert_eq!(s.network().edge_count(), 1);
        assert_eq!(s.schedule().tau(0), ExtendedTime::Finite(1));
    }

    #[test]
    fn beta_rules() {
        let with_beta = MINIMAL.replace("}}", r#"}, "beta": 0.5}"#);
        assert!(matches!(
            parse_scenario(&with_beta),
            Err(ScenarioError::BetaNotApplicable)
        ));
        let approx = MINIMAL.replace("}}", r#"}, "engine": "approx"}"#);
        assert!(matches!(parse_scenario(&approx), Err(ScenarioError::MissingBeta)));
        let ok = MINIMAL.replace("}}", r#"}, "engine": "approx", "beta": 0.5}"#);
        assert_eq!(parse_scenario(&ok).unwrap().beta, Some(0.5));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = r#"{"network": {"n": 2, "edges": [[1, 2, "x"]], "recovery": [3, 3]}}"#;
        match parse_scenario(bad) {
            Err(ScenarioError::Schema { path, .. }) => assert!(path.starts_with("network"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"network": {"n": 2, "edges": [], "recovery": [3, 3]}, "engine": "warp"}"#;
        match parse_scenario(bad) {
            Err(ScenarioError::Schema { path, .. }) => assert_eq!(path, "engine"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"network": {"n": 2, "edges": [], "recovery": [3, 3]}, "external": {"one": 1}}"#;
        assert!(matches!(parse_scenario(bad), Err(ScenarioError::Schema { path, .. }) if path == "external.one"));
    }

    #[test]
    fn unknown_agents() {
        let bad = r#"{"network": {"n": 2, "edges": [[1, 3, 0.2]], "recovery": [3, 3]}}"#;
        assert!(matches!(parse_scenario(bad), Err(ScenarioError::UnknownAgent(3))));
        let bad = r#"{"network": {"n": 2, "edges": [], "recovery": [3, 3]}, "external": {"5": 1}}"#;
        assert!(matches!(parse_scenario(bad), Err(ScenarioError::UnknownAgent(5))));
        let bad = r#"{"network": {"n": 2, "edges": [[1, 1, 0.2]], "recovery": [3, 3]}}"#;
        assert!(matches!(
            parse_scenario(bad),
            Err(ScenarioError::Network(ModelError::SelfEdge(0)))
        ));
    }

    #[test]
    fn network_file_reference() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("net.json"),
            r#"{"n": 2, "edges": [[1, 2, 0.4]], "recovery": [2, 2]}"#,
        )
        .unwrap();
        let path = dir.path().join("s.json");
        std::fs::write(&path, r#"{"network": "net.json", "external": {"2": 4}, "seed": 9}"#).unwrap();
        let s = load_scenario(&path).unwrap();
        assert_eq!(s.network.edges, vec![(1, 2, 0.4)]);
        assert_eq!(s.seed, 9);
        assert_eq!(parse_scenario(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn round_trip() {
        let doc = r#"{"network": {"n": 3, "edges": [[1, 2, 0.25], [3, 2, 0.1]], "recovery": [3, 4, 5]},
            "external": {"1": 1, "3": 7}, "engine": "approx", "mode": "literal_dynamics",
            "beta": 0.3, "seed": 42, "horizon": 80, "replicas": 10}"#;
        let s = parse_scenario(doc).unwrap();
        assert_eq!(parse_scenario(&s.to_json()).unwrap(), s);
    }
}
