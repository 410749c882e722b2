use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

/// Output rendering of a [`Report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    #[value(name = "json-lines")]
    JsonLines,
}

/// One named check with its verdict, supporting values and first witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub fields: Map<String, Value>,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed, fields: Map::new(), witness: None }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Records a witness and marks the check failed.
    pub fn fail(mut self, witness: impl Into<String>) -> Self {
        self.passed = false;
        self.witness = Some(witness.into());
        self
    }
}

/// A command run: inputs, checks in execution order, and wall-clock timings
/// kept apart so everything else is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub timings: Vec<(String, f64)>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Self { command: command.to_string(), inputs, checks: Vec::new(), timings: Vec::new() }
    }

    pub fn push(&mut self, check: Check, elapsed: Duration) {
        self.timings.push((check.name.clone(), elapsed.as_secs_f64()));
        self.checks.push(check);
    }

    /// Records a timing that has no check of its own.
    pub fn time(&mut self, name: &str, elapsed: Duration) {
        self.timings.push((name.to_string(), elapsed.as_secs_f64()));
    }

    /// Runs `f`, timing it, and records its check.
    pub fn run(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let check = f();
        self.push(check, start.elapsed());
    }

    /// Runs `f`, recording all its checks under one timing entry `group`.
    pub fn run_group<E>(&mut self, group: &str, f: impl FnOnce() -> Result<Vec<Check>, E>) -> Result<(), E> {
        let start = Instant::now();
        let checks = f()?;
        self.timings.push((group.to_string(), start.elapsed().as_secs_f64()));
        self.checks.extend(checks);
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// 0 when every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    /// Every record except timings.
    pub fn records(&self) -> Vec<Value> {
        let mut out = vec![json!({"record": "run", "command": self.command, "inputs": self.inputs})];
        for c in &self.checks {
            out.push(json!({
                "record": "check",
                "name": c.name,
                "pass": c.passed,
                "fields": c.fields,
                "witness": c.witness,
            }));
        }
        out.push(json!({
            "record": "summary",
            "pass": self.passed(),
            "checks": self.checks.len(),
            "failed": self.failed().count(),
        }));
        out
    }

    pub fn timing_record(&self) -> Value {
        let seconds: Map<String, Value> = self.timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({"record": "timings", "seconds": seconds})
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for r in self.records().iter().chain(std::iter::once(&self.timing_record())) {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.command.to_string();
        for (k, v) in &self.inputs {
            let _ = write!(s, " {k}={}", plain(v));
        }
        s.push('\n');
        for c in &self.checks {
            let _ = write!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            for (k, v) in &c.fields {
                let _ = write!(s, " {k}={}", plain(v));
            }
            s.push('\n');
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "  witness: {w}");
            }
        }
        let failed = self.failed().count();
        let _ = writeln!(s, "{}: {} checks, {failed} failed", if failed == 0 { "PASS" } else { "FAIL" }, self.checks.len());
        let times: Vec<String> = self.timings.iter().map(|(k, v)| format!("{k}={v:.3}s")).collect();
        let _ = writeln!(s, "timings: {}", times.join(" "));
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::JsonLines => self.to_json_lines(),
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", json!({"q": 2, "graph": "g.txt"}));
        r.push(Check::new("first", true).field("array", "{18,8;1,9}").field("count", 35), Duration::from_millis(5));
        r.push(Check::new("second", true).fail("vertex 3"), Duration::from_millis(7));
        r
    }

    #[test]
    fn verdicts_and_exit_codes() {
        let r = sample();
        assert!(!r.passed());
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.failed().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["second"]);
        assert_eq!(Report::new("empty", json!({})).exit_code(), 0);
    }

    #[test]
    fn json_lines_keep_timings_last() {
        let text = sample().to_json_lines();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0]["record"], "run");
        assert_eq!(lines[1]["fields"]["count"], 35);
        assert_eq!(lines[2]["witness"], "vertex 3");
        assert_eq!(lines[3]["failed"], 1);
        assert_eq!(lines[4]["record"], "timings");
        assert!(text.lines().take(4).all(|l| !l.contains("seconds")));
    }

    #[test]
    fn text_rendering() {
        let text = sample().to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "demo graph=g.txt q=2");
        assert_eq!(lines[1], "PASS first array={18,8;1,9} count=35");
        assert_eq!(lines[2], "FAIL second");
        assert_eq!(lines[3], "  witness: vertex 3");
        assert_eq!(lines[4], "FAIL: 2 checks, 1 failed");
        assert!(lines[5].starts_with("timings: first=0.005s"));
    }
}
