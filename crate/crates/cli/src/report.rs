use std::fmt::Write as _;

use hypgrp_core::{Error, ErrorClass};
use serde::Serialize;
use serde_json::{Map, Value};

/// A checked equation between group elements.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub equation: String,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip)]
    pub class: ErrorClass,
}

impl ErrorInfo {
    pub fn from_core(e: &Error) -> Self {
        Self::new(e.class(), e.to_string())
    }

    pub fn new(class: ErrorClass, message: String) -> Self {
        let kind = match class {
            ErrorClass::Input => "input",
            ErrorClass::Infeasible => "infeasible",
            ErrorClass::Internal => "internal",
        };
        ErrorInfo { kind, message, class }
    }
}

/// One query's outcome, serialized as a JSON line with `--json`.
#[derive(Clone, Debug, Serialize)]
pub struct QueryResult {
    pub command: String,
    pub inputs: Value,
    pub verdict: Value,
    pub certificates: Vec<Certificate>,
    pub bounds_used: Map<String, Value>,
    pub timing_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub summary: String,
}

pub fn render_text(r: &QueryResult) -> String {
    let mut out = String::new();
    match &r.error {
        Some(e) => {
            let _ = writeln!(out, "{}: error ({}): {}", r.command, e.kind, e.message);
        }
        None => {
            let _ = writeln!(out, "{}: {}", r.command, r.summary);
        }
    }
    for c in &r.certificates {
        let _ = writeln!(out, "  certificate: {} [{}]", c.equation, if c.verified { "verified" } else { "FAILED" });
    }
    if !r.bounds_used.is_empty() {
        let parts: Vec<String> = r.bounds_used.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        let _ = writeln!(out, "  bounds: {}", parts.join(" "));
    }
    let _ = writeln!(out, "  time: {:.3} ms", r.timing_ms);
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A top-level failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn input(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }

    pub fn internal(error: anyhow::Error) -> Self {
        Failure { code: 3, error }
    }

    pub fn from_core(e: Error, what: &str) -> Self {
        let code = match e.class() {
            ErrorClass::Input => 1,
            ErrorClass::Infeasible => 2,
            ErrorClass::Internal => 3,
        };
        Failure { code, error: anyhow::Error::new(e).context(what.to_string()) }
    }
}
