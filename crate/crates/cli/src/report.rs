use std::fmt::Write as _;

use cealg::Check;
use serde::Serialize;

/// The structured result of one command. Field order and the order of
/// entries are fixed, so output is stable for fixed inputs and seeds.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub values: Vec<Value>,
    pub checks: Vec<Check>,
    pub sections: Vec<Section>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings_ms: Vec<Timing>,
}

#[derive(Debug, Serialize)]
pub struct Value {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub body: String,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub phase: String,
    pub ms: u128,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report { command, ..Report::default() }
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push(Value { key: key.into(), value: value.to_string() });
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn section(&mut self, title: impl Into<String>, body: impl Into<String>) {
        self.sections.push(Section { title: title.into(), body: body.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Plain text. Everything except section bodies is prefixed with `#`,
    /// so a report whose sections hold definition files can be fed back in.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.command);
        for v in &self.values {
            let _ = writeln!(out, "# {}: {}", v.key, v.value);
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "# [{status}] {}", c.name);
            } else {
                let _ = writeln!(out, "# [{status}] {}: {}", c.name, c.detail);
            }
        }
        for s in &self.sections {
            let _ = writeln!(out, "# -- {} --", s.title);
            out.push_str(&s.body);
            if !s.body.ends_with('\n') {
                out.push('\n');
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "# note: {n}");
        }
        for t in &self.timings_ms {
            let _ = writeln!(out, "# time {}: {} ms", t.phase, t.ms);
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
