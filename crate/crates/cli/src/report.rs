//! Machine-readable run reports.
//!
//! The text rendering is line-oriented `key=value`; the JSON rendering
//! carries exactly the same lines. Reports contain only data reproducible
//! from the inputs, so repeated runs are byte-identical; stage timings go
//! to stderr instead.

use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Section {
    pub name: String,
    pub lines: Vec<String>,
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub format: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub sections: Vec<Section>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            format: 1,
            tool: "ckt",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs: Vec::new(),
            sections: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.push(InputRecord {
            path: path.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        });
    }

    pub fn section(&mut self, name: &str) -> &mut Section {
        self.sections.push(Section {
            name: name.to_string(),
            lines: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("format {}\n", self.format));
        out.push_str(&format!("tool={}\n", self.tool));
        out.push_str(&format!("version={}\n", self.version));
        out.push_str(&format!("command={}\n", self.command));
        for input in &self.inputs {
            out.push_str(&format!("input={}\n", input.path));
            out.push_str(&format!("sha256={}\n", input.sha256));
        }
        for section in &self.sections {
            out.push_str(&format!("section={}\n", section.name));
            for line in &section.lines {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn print_timings_to_stderr(&self) {
        for (stage, elapsed) in &self.timings {
            eprintln!("# timing {} {}us", stage, elapsed.as_micros());
        }
    }
}

impl Section {
    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}={value}"));
        self
    }

    pub fn raw(&mut self, text: &str) -> &mut Self {
        for line in text.lines() {
            self.lines.push(line.to_string());
        }
        self
    }
}
