//! The shared solver result type and its document form.

use indexmap::IndexMap;
use serde::Serialize;
use serde_json::json;

use crate::da::is_stable;
use crate::efficiency::is_efficient;
use crate::instance::Instance;
use crate::matching::{is_feasible, CapacityVector, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    #[serde(rename = "feasible-within-budget")]
    FeasibleWithinBudget,
    #[serde(rename = "infeasible-within-budget")]
    InfeasibleWithinBudget,
}

/// Independently re-verified properties of a witness matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub stable: bool,
    pub perfect: bool,
    pub efficient: bool,
}

/// Outcome of one solver run.
///
/// `objective` is the value the method computed (`sum` or `max` norm,
/// depending on the problem); for methods that only bound the optimum the
/// witness increase may be smaller than the reported objective. When a
/// bounded search exhausts its budget without an answer the optional fields
/// stay empty.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub objective: Option<u64>,
    pub increase: Option<CapacityVector>,
    pub witness: Option<Matching>,
    pub certificates: Option<Certificates>,
    /// Which concrete path produced the answer (method name, or the special
    /// case that fired under `auto` dispatch).
    pub path: &'static str,
}

impl SolveResult {
    pub fn feasible(&self) -> bool {
        self.status == SolveStatus::FeasibleWithinBudget
    }

    pub fn infeasible(path: &'static str) -> Self {
        SolveResult {
            status: SolveStatus::InfeasibleWithinBudget,
            objective: None,
            increase: None,
            witness: None,
            certificates: None,
            path,
        }
    }

    pub fn to_document(&self, inst: &Instance) -> String {
        let increase = self.increase.as_ref().map(|r| {
            let map: IndexMap<String, u32> = r
                .raises()
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(w, &v)| (inst.school_name(w).to_string(), v))
                .collect();
            map
        });
        let matching = self.witness.as_ref().map(|mu| {
            let map: IndexMap<String, String> = (0..inst.n())
                .filter_map(|u| {
                    mu.school_of(u).map(|w| {
                        (
                            inst.student_name(u).to_string(),
                            inst.school_name(w).to_string(),
                        )
                    })
                })
                .collect();
            map
        });
        let doc = json!({
            "status": self.status,
            "objective": self.objective,
            "increase": increase.map(|m| json!({ "increase": m })),
            "matching": matching.map(|m| json!({ "assignment": m })),
            "certificates": self.certificates,
            "path": self.path,
        });
        let mut out = serde_json::to_string_pretty(&doc).unwrap();
        out.push('\n');
        out
    }
}

/// Re-verify the three certificate flags of a witness.
pub fn certify(inst: &Instance, mu: &Matching, r: &CapacityVector) -> Certificates {
    let stable = is_stable(inst, mu, r);
    let perfect = mu.is_perfect();
    let efficient = is_feasible(inst, mu, r)
        && is_efficient(inst, mu, r)
            .map(|e| e.is_efficient())
            .unwrap_or(false);
    Certificates {
        stable,
        perfect,
        efficient,
    }
}
