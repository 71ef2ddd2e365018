//! Machine-readable run reports: one record per check, with the computed
//! value, the claimed value where one exists, and any witnesses. The JSON
//! form round-trips losslessly and is byte-stable for a fixed
//! configuration.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            computed: None,
            claimed: None,
            matched: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn computed(mut self, value: impl Into<String>) -> Self {
        self.computed = Some(value.into());
        self
    }

    pub fn claimed(mut self, value: impl Into<String>) -> Self {
        self.claimed = Some(value.into());
        self
    }

    pub fn matched(mut self, ok: bool) -> Self {
        self.matched = Some(ok);
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Report {
        Report {
            command: command.into(),
            seed,
            verdict: Verdict::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} (seed {})\n", self.command, self.seed));
        for c in &self.checks {
            let status = match c.matched {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "info",
            };
            out.push_str(&format!("{} {}", status, c.name));
            if let Some(v) = &c.computed {
                out.push_str(&format!("  computed: {}", v));
            }
            if let Some(v) = &c.claimed {
                out.push_str(&format!("  claimed: {}", v));
            }
            out.push('\n');
            for w in &c.witnesses {
                out.push_str(&format!("      witness: {}\n", w));
            }
            for n in &c.notes {
                out.push_str(&format!("      note: {}\n", n));
            }
        }
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Error => "error",
            }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_lossless() {
        let mut report = Report::new("catalogue", 7);
        report.push(
            CheckRecord::new("1.3^1 [all]")
                .computed("dim R(g) = 1")
                .claimed("dim R(g) = 1")
                .matched(true)
                .note("nothing to see"),
        );
        report.verdict = Verdict::Pass;
        let text = report.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
    }
}
