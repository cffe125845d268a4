//! Reports: a human text section followed by a fenced JSON document.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub input: String,
    sections: Vec<(String, Vec<String>)>,
    pub checks: Vec<Check>,
    pub data: serde_json::Map<String, Value>,
}

pub const JSON_FENCE_OPEN: &str = "```json";
pub const JSON_FENCE_CLOSE: &str = "```";

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            ..Default::default()
        }
    }

    pub fn section(&mut self, title: &str, lines: Vec<String>) {
        self.sections.push((title.into(), lines));
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn data(&mut self, key: &str, value: Value) {
        self.data.insert(key.into(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "input": self.input,
            "passed": self.passed(),
            "checks": self.checks,
            "data": Value::Object(self.data.clone()),
        })
    }

    pub fn json_text(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn text(&self) -> String {
        let mut out = format!("command: {}\ninput: {}\n", self.command, self.input);
        for (title, lines) in &self.sections {
            out.push_str(&format!("\n{title}:\n"));
            for l in lines {
                out.push_str(&format!("  {l}\n"));
            }
        }
        out.push_str("\nchecks:\n");
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("  {mark}  {}  ({d})\n", c.name)),
                None => out.push_str(&format!("  {mark}  {}\n", c.name)),
            }
        }
        out.push_str(&format!("\nresult: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }

    /// Text, then the JSON section between fences.
    pub fn render(&self, json_only: bool) -> String {
        if json_only {
            return format!("{}\n", self.json_text());
        }
        format!("{}\n{JSON_FENCE_OPEN}\n{}\n{JSON_FENCE_CLOSE}\n", self.text(), self.json_text())
    }
}

/// The JSON document embedded in a rendered report.
pub fn extract_json(rendered: &str) -> Option<Value> {
    let start = rendered.find(JSON_FENCE_OPEN)? + JSON_FENCE_OPEN.len();
    let end = rendered[start..].rfind(JSON_FENCE_CLOSE)? + start;
    serde_json::from_str(&rendered[start..end]).ok()
}
