//! Structured campaign verdicts.

use serde::{Deserialize, Serialize};

use crate::space::Space;

/// Outcome of one checked property within a campaign: a verdict, the worst
/// residual observed, and a witness when the check failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub id: String,
    pub pass: bool,
    pub witness: Option<serde_json::Value>,
    pub max_defect: f64,
}

impl AxiomCheck {
    pub fn passing(id: &str, max_defect: f64) -> Self {
        AxiomCheck { id: id.into(), pass: true, witness: None, max_defect }
    }

    pub fn failing(id: &str, witness: serde_json::Value, max_defect: f64) -> Self {
        AxiomCheck { id: id.into(), pass: false, witness: Some(witness), max_defect }
    }
}

/// Verdict of an axiom/property campaign over one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub campaign: String,
    pub space: Space,
    pub axioms: Vec<AxiomCheck>,
    pub seed: u64,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn check(&self, id: &str) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|a| a.id == id)
    }
}
