//! Library half of the `confmat` command line: named identity checks with
//! deterministic reports, plus the input-resolution plumbing shared by the
//! binary and its tests.

pub mod checks;

use std::time::Duration;

use confmat_core::config::Realization;
use confmat_core::families::Graph;
use confmat_core::groebner::{GbOptions, Ideal};
use confmat_core::io;
use confmat_core::{Error, FieldSpec, Result};
use serde_json::{json, Value};

/// Outcome of one check on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

/// One line of a check run.  `elapsed` stays out of the JSON payload so
/// output is byte-identical across runs.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: &'static str,
    pub instance: String,
    pub reference: &'static str,
    pub status: Status,
    pub witness: Value,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail(_))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "check": self.check,
            "instance": self.instance,
            "reference": self.reference,
            "status": match self.status {
                Status::Pass => "pass",
                Status::Fail(_) => "fail",
                Status::Skipped(_) => "skipped",
            },
        });
        match &self.status {
            Status::Fail(detail) | Status::Skipped(detail) => {
                v["detail"] = json!(detail);
            }
            Status::Pass => {}
        }
        if !self.witness.is_null() {
            v["witness"] = self.witness.clone();
        }
        v
    }

    pub fn to_text(&self) -> String {
        let status = match &self.status {
            Status::Pass => "pass".to_string(),
            Status::Fail(d) => format!("FAIL ({d})"),
            Status::Skipped(d) => format!("skipped ({d})"),
        };
        format!("{:<24} {:<40} {} [{}]", self.check, self.instance, status, self.reference)
    }
}

/// What a check run was pointed at, plus the knobs that steer it.
#[derive(Default)]
pub struct CheckContext {
    /// Field override from `--field` or `CONFMAT_FIELD`.
    pub field: Option<FieldSpec>,
    pub gb: GbOptions,
    /// A realization supplied via `--file`/`--instance`, if any.
    pub realization: Option<(String, Realization)>,
    /// The graph behind `realization` when the input was a graph file.
    pub graph: Option<Graph>,
}

/// A parsed input file: the three JSON shapes the CLI accepts.
pub enum Input {
    Realization(Realization),
    Graph(Graph),
    Ideal(Ideal),
}

/// Parses an input JSON value by shape.  `field` overrides the file's own
/// field for realizations and ideals and is required for graphs when a
/// realization is to be built later.
pub fn parse_input(text: &str, field: Option<FieldSpec>) -> Result<Input> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    match io::detect(value)? {
        io::InputObject::Realization(v) => {
            Ok(Input::Realization(io::realization_from_json(&v, field)?))
        }
        io::InputObject::Graph(v) => Ok(Input::Graph(io::graph_from_json(&v)?)),
        io::InputObject::Ideal(v) => Ok(Input::Ideal(io::ideal_from_json(&v, field)?)),
    }
}

/// Resolves the field for commands that need one without an input file
/// carrying it: explicit flag, then `CONFMAT_FIELD`, then ℚ.
pub fn field_or_default(field: Option<FieldSpec>) -> FieldSpec {
    field.unwrap_or(FieldSpec::Q)
}

/// Reads the `CONFMAT_FIELD` environment variable.
pub fn env_field() -> Result<Option<FieldSpec>> {
    match std::env::var("CONFMAT_FIELD") {
        Ok(s) if !s.is_empty() => Ok(Some(FieldSpec::parse(&s)?)),
        _ => Ok(None),
    }
}

/// Maps an error to the documented exit code: 3 for resource exhaustion,
/// 2 for anything else (bad input, impossible request).
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        _ => 2,
    }
}
