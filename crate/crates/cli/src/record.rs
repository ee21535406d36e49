//! The JSON document printed on stdout.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub total_weight: f64,
    /// Size of the graph actually solved when a ball restriction was applied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted: Option<RestrictedStats>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedStats {
    pub n: usize,
    pub m: usize,
    pub radius: Option<usize>,
    pub min_count: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Objective {
    pub name: String,
    /// `numerator / denominator` of the returned set.
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
    /// Final continuous ratio of the minimized objective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Set value including the penalty at `gamma_used`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalized_value: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub direction: &'static str,
    /// `degree`, `h` or `ones`.
    pub weights: &'static str,
    pub bound: f64,
    pub volume: f64,
    pub slack: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StartRecord {
    /// Index of the multi-start batch (one per penalty weight tried).
    pub round: usize,
    pub init_id: usize,
    pub gamma: Option<f64>,
    pub trace: Vec<f64>,
    pub set_value: Option<f64>,
    pub penalized_value: Option<f64>,
    pub feasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub set: Vec<u64>,
    pub value: f64,
    pub volume: f64,
    pub derived_bound: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub load_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub schema: u32,
    pub command: String,
    pub argv: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    pub graph: GraphStats,
    /// Original vertex IDs, ascending.
    pub set: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
    pub constraints: Vec<ConstraintReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_used: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gammas: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<Stage>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub starts: Vec<StartRecord>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    pub timings_ms: Timings,
}

impl RunRecord {
    pub fn new(command: &str, argv: Vec<String>) -> Self {
        RunRecord {
            schema: SCHEMA,
            command: command.to_owned(),
            argv,
            status: Status::Feasible,
            message: None,
            rng_seed: None,
            graph: GraphStats::default(),
            set: Vec::new(),
            objective: None,
            constraints: Vec::new(),
            gamma_used: None,
            gammas: Vec::new(),
            stages: Vec::new(),
            starts: Vec::new(),
            details: Map::new(),
            timings_ms: Timings::default(),
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_owned(), serde_json::to_value(value).expect("serializable detail"));
    }
}
