use std::fmt::Write;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Result of one command. Fields keep insertion order in both formats.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub fields: Map<String, Value>,
    pub exit_status: u8,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), fields: Map::new(), exit_status: 0 }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn failure(command: &str, err: &crate::CliError) -> Self {
        let mut r = Report::new(command);
        r.set("error", err.to_string());
        r.exit_status = err.exit_code();
        r
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        m.insert("exit_status".into(), self.exit_status.into());
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("plain JSON values");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                if let Value::Object(m) = self.to_value() {
                    for (k, v) in &m {
                        text_field(&mut out, 0, k, v);
                    }
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_field(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(m) if m.values().all(|x| scalar(x).is_some()) => {
                        let parts: Vec<String> =
                            m.iter().map(|(k, x)| format!("{k}: {}", scalar(x).unwrap())).collect();
                        let _ = writeln!(out, "{pad}  - {}", parts.join(", "));
                    }
                    Value::Object(m) => {
                        let _ = writeln!(out, "{pad}  -");
                        for (k, x) in m {
                            text_field(out, depth + 2, k, x);
                        }
                    }
                    other => {
                        let _ = writeln!(out, "{pad}  - {}", scalar(other).unwrap_or_default());
                    }
                }
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                text_field(out, depth + 1, k, x);
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_layout() {
        let mut r = Report::new("closure");
        r.set("generators", json!(["x", "y", "z^2"]));
        r.set("certificate", json!([{"element": "z^2", "e": 1}]));
        let text = r.render(Format::Text);
        assert_eq!(
            text,
            "command: closure\ngenerators: [x, y, z^2]\ncertificate:\n  - element: z^2, e: 1\nexit_status: 0\n"
        );
    }

    #[test]
    fn machine_output_keeps_order() {
        let mut r = Report::new("gb");
        r.set("zeta", 1).set("alpha", 2);
        let m = r.render(Format::Machine);
        assert!(m.find("zeta").unwrap() < m.find("alpha").unwrap());
        let v: Value = serde_json::from_str(&m).unwrap();
        assert_eq!(v["exit_status"], 0);
    }
}
