use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};
use xlag::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A finished command: the JSON body and its text rendering.
pub struct Report {
    pub command: &'static str,
    pub exit: i32,
    pub body: Map<String, Value>,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            exit: EXIT_OK,
            body: Map::new(),
            text: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.body.insert(key.to_string(), v.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Marks a failed check; the body must already hold the certificate.
    pub fn fail(&mut self) {
        self.exit = EXIT_CHECK_FAILED;
    }

    pub fn from_error(command: &'static str, e: &Error) -> Self {
        let (exit, kind, field) = classify(e);
        let mut r = Report::new(command);
        r.exit = exit;
        let mut err = json!({ "kind": kind, "message": e.to_string() });
        if let Some(f) = field {
            err["field"] = json!(f);
        }
        if let Error::PathThroughZero { min_modulus } = e {
            err["min_modulus"] = json!(min_modulus);
        }
        r.set("error", err);
        r.line(format!("error ({kind}): {e}"));
        r
    }

    pub fn render_json(&self, timestamp: bool) -> String {
        let mut out = Map::new();
        out.insert("schema".into(), json!(1));
        out.insert("command".into(), json!(self.command));
        out.insert(
            "status".into(),
            json!(match self.exit {
                EXIT_OK => "ok",
                EXIT_CHECK_FAILED => "check-failed",
                _ => "error",
            }),
        );
        if timestamp {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            out.insert("timestamp".into(), json!(secs));
        }
        out.extend(self.body.clone());
        serde_json::to_string_pretty(&Value::Object(out)).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        self.text.join("\n")
    }
}

fn classify(e: &Error) -> (i32, &'static str, Option<&'static str>) {
    match e {
        Error::Parameter { name, .. } => (EXIT_USAGE, "parameter", Some(name)),
        Error::Parse(_) => (EXIT_USAGE, "parse", None),
        Error::Index(_) => (EXIT_USAGE, "index", Some("n")),
        Error::Dimension(_) => (EXIT_USAGE, "dimension", None),
        Error::Reduction(_) => (EXIT_USAGE, "reduction", Some("component")),
        Error::Degeneracy(_) => (EXIT_USAGE, "degeneracy", Some("alpha")),
        Error::Certificate(_) => (EXIT_CHECK_FAILED, "certificate", None),
        Error::PathThroughZero { .. } => (EXIT_CHECK_FAILED, "path-through-zero", Some("radius")),
        Error::Search(_) => (EXIT_CHECK_FAILED, "search", None),
    }
}
