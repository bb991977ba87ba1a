use serde_json::{json, Value};

/// One checked identity instance.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "name": self.name, "pass": self.pass });
        if let Some(d) = &self.detail {
            v["detail"] = json!(d);
        }
        v
    }
}

/// Output of a command, rendered either as text or as one JSON object.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub text: String,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values are always serializable")
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.clone();
        for c in &self.checks {
            if !out.is_empty() && !out.ends_with('\n') {
                out.push('\n');
            }
            out.push_str(if c.pass { "PASS  " } else { "FAIL  " });
            out.push_str(&c.name);
            if let Some(d) = &c.detail {
                out.push_str(": ");
                out.push_str(d);
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.pass).count();
            out.push_str(&format!("\n{} checks, {failed} failed", self.checks.len()));
        }
        out
    }
}
