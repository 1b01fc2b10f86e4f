//! Structured result records for lemma checks. Reports serialize as JSON
//! objects (one per line in batch output) and round-trip losslessly.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
    BudgetExhausted,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// The CLI exit code contract: 0 pass, 1 fail, 5 hypothesis-not-met,
    /// 4 budget-exhausted.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::HypothesisNotMet => 5,
            Verdict::BudgetExhausted => 4,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::BudgetExhausted => "budget-exhausted",
        };
        f.write_str(s)
    }
}

/// One check outcome. Every fail carries a witness that can be re-checked
/// in isolation; every randomized check records its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
    pub details: serde_json::Value,
    /// Wall time in milliseconds. Informational only; verdicts are
    /// reproducible from (check, params, seed) alone.
    pub wall_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Human-readable multi-line rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("check    {}\n", self.check));
        out.push_str(&format!("verdict  {}\n", self.verdict));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed     {seed}\n"));
        }
        out.push_str(&format!("params   {}\n", self.params));
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness  {w}\n"));
        }
        out.push_str(&format!("details  {}\n", self.details));
        out.push_str(&format!("wall_ms  {}\n", self.wall_ms));
        out
    }
}
