use serde::Serialize;

/// One named inequality that an operation requires, with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub id: String,
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ConditionCheck {
    /// Records `lhs > rhs` (strict).
    pub fn greater(id: &str, description: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            id: id.to_string(),
            description: description.to_string(),
            lhs,
            rhs,
            holds: lhs > rhs,
        }
    }

    /// Records `lhs <= rhs`.
    pub fn at_most(id: &str, description: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            id: id.to_string(),
            description: description.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("column {column} has zero norm and cannot be normalized")]
    ZeroColumn { column: usize },

    #[error("coherence is undefined for a matrix with a single column")]
    UndefinedCoherence,

    #[error("support set is empty")]
    EmptySupport,

    #[error("secular function evaluated at x = {x}, within 1e-14 of pole {pole}")]
    PoleEvaluation { x: f64, pole: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("outside the bound's regime: {condition} requires {lhs} > {rhs}")]
    Regime {
        condition: String,
        lhs: f64,
        rhs: f64,
    },

    #[error("preconditions violated: {}", describe(.0))]
    Preconditions(Vec<ConditionCheck>),

    #[error("coherence {mu} is not admissible: requires mu <= min{thresholds:?}")]
    Admissibility { mu: f64, thresholds: Vec<f64> },

    #[error("kernel dimension {dim} exceeds d_max = {d_max}; use the sampled method")]
    Capacity { dim: usize, d_max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn describe(checks: &[ConditionCheck]) -> String {
    checks
        .iter()
        .map(|c| format!("[{}] {} (lhs = {}, rhs = {})", c.id, c.description, c.lhs, c.rhs))
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn regime(condition: &str, lhs: f64, rhs: f64) -> Error {
    Error::Regime {
        condition: condition.to_string(),
        lhs,
        rhs,
    }
}
