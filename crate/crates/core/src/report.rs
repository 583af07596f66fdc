use serde::Serialize;
use std::fmt;

/// Outcome of a single named check or query inside a report. `Fail` is
/// reserved for verification failures (an internal cross-check that should
/// never trip); negative mathematical verdicts like `NotDivisible` are
/// successful computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Divisible,
    NotDivisible,
    Admissible,
    Rejected,
    Consistent,
    Impossible,
    NotApplicable,
    Info,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Divisible => "divisible",
            Outcome::NotDivisible => "not-divisible",
            Outcome::Admissible => "admissible",
            Outcome::Rejected => "rejected",
            Outcome::Consistent => "consistent",
            Outcome::Impossible => "impossible",
            Outcome::NotApplicable => "not-applicable",
            Outcome::Info => "info",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

/// User-facing result of a command: an echo of what ran, a list of named
/// verdicts, free-form notes, provenance of loaded tables, and structured
/// data for machine consumers. The text rendering is generated from the same
/// fields as the JSON rendering, so the two cannot disagree on verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub provenance: Vec<String>,
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            provenance: Vec::new(),
            data: serde_json::Value::Null,
        }
    }

    pub fn verdict(
        &mut self,
        name: impl Into<String>,
        outcome: Outcome,
        detail: impl Into<String>,
    ) {
        self.verdicts.push(Verdict {
            name: name.into(),
            outcome,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn has_failure(&self) -> bool {
        self.verdicts.iter().any(|v| v.outcome == Outcome::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for v in &self.verdicts {
            out.push_str(&format!("[{}] {}: {}\n", v.outcome, v.name, v.detail));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {}\n", n));
        }
        for p in &self.provenance {
            out.push_str(&format!("provenance: {}\n", p));
        }
        if let serde_json::Value::Object(map) = &self.data {
            if let Some(serde_json::Value::String(table)) = map.get("table_text") {
                out.push('\n');
                out.push_str(table);
            }
        }
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => self.to_text(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}
