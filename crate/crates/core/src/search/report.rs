//! Verification reports: the structured answer of every machine check.
//!
//! Reports serialize to JSON; `canonical_json` zeroes the wall-clock field so
//! that runs with a fixed seed are byte-identical.

use serde::{Deserialize, Serialize};

use crate::bigraph::BigraphJson;
use crate::certificate::Certificate;
use crate::search::SearchStats;

/// How a question was decided. Randomized answers are honestly labeled with
/// their sample counts and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    PrunedExhaustive { pruned_by: String },
    Randomized { samples_per_shape: u64, shapes: Vec<String>, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Answer {
    Holds,
    Refuted {
        counterexample: BigraphJson,
        note: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        certificates: Vec<Certificate>,
    },
    Inconclusive {
        reason: String,
    },
}

pub type ReportStats = SearchStats;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub question: String,
    pub answer: Answer,
    pub method: Method,
    /// Per-check lines: case counts, per-N results, sampler records.
    pub details: Vec<String>,
    pub stats: ReportStats,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with volatile fields (wall time) zeroed; fixed seed implies
    /// byte-identical output.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.stats.wall_ms = 0;
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }

    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("question : {}\n", self.question));
        let answer = match &self.answer {
            Answer::Holds => "holds".to_string(),
            Answer::Refuted { note, .. } => format!("REFUTED ({note})"),
            Answer::Inconclusive { reason } => format!("inconclusive ({reason})"),
        };
        out.push_str(&format!("answer   : {answer}\n"));
        let method = match &self.method {
            Method::Exhaustive => "exhaustive".to_string(),
            Method::PrunedExhaustive { pruned_by } => format!("pruned-exhaustive ({pruned_by})"),
            Method::Randomized { samples_per_shape, shapes, seed } => format!(
                "randomized ({samples_per_shape} samples x {} shapes, seed {seed})",
                shapes.len()
            ),
        };
        out.push_str(&format!("method   : {method}\n"));
        out.push_str(&format!(
            "stats    : nodes={} leaves={}{} wall={}ms\n",
            self.stats.nodes,
            self.stats.leaves,
            self.stats.orbits.map_or(String::new(), |o| format!(" orbits={o}")),
            self.stats.wall_ms
        ));
        for d in &self.details {
            out.push_str(&format!("  - {d}\n"));
        }
        if let Answer::Refuted { counterexample, .. } = &self.answer {
            out.push_str("counterexample:\n");
            out.push_str(&format!("  {} {} {}\n", counterexample.a, counterexample.b, counterexample.k));
            for row in &counterexample.colors {
                let line: Vec<String> = row.iter().map(u16::to_string).collect();
                out.push_str(&format!("  {}\n", line.join(" ")));
            }
        }
        out
    }

    /// Exit-code contract: 0 holds, 1 refuted, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.answer {
            Answer::Holds => 0,
            Answer::Refuted { .. } => 1,
            Answer::Inconclusive { .. } => 3,
        }
    }
}
