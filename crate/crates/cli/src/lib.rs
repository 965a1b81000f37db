//! Batch JSON front end: one command per invocation, JSON in, JSON out,
//! structured diagnostics on the error stream.  Output is a pure function
//! of (input document, seed, bounds).

mod commands;
mod jsonio;

use serde_json::{json, Map, Value};

pub use jsonio::CliError;
use schur_forge::Budget;

pub const SCHEMA: &str = "schur-forge/1";

/// A fully specified job: command name, input document, seed and bounds.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: String,
    pub input: Value,
    pub seed: u64,
    pub budget: Budget,
    /// Require the quiver form of the input (the `schur --quiver` flag).
    pub quiver: bool,
}

pub const COMMANDS: &[&str] = &[
    "schur",
    "endo",
    "simple",
    "intertwine",
    "quaternion",
    "hilbert",
    "split",
    "origin",
    "twist",
    "descend",
    "quiver2rep",
    "demo-quadratic",
];

/// Run one job; the Ok value is the full report object written to stdout.
pub fn run_job(job: &JobSpec) -> Result<Value, CliError> {
    if let Some(schema) = job.input.get("schema") {
        match schema.as_str() {
            Some(s) if s == SCHEMA => {}
            _ => {
                return Err(CliError::schema(
                    "/schema",
                    &format!("expected {SCHEMA:?}"),
                ))
            }
        }
    }
    let body = match job.command.as_str() {
        "schur" => commands::schur(job)?,
        "endo" => commands::endo(job)?,
        "simple" => commands::simple(job)?,
        "intertwine" => commands::intertwine(job)?,
        "quaternion" => commands::quaternion(job)?,
        "hilbert" => commands::hilbert(job)?,
        "split" => commands::split(job)?,
        "origin" => commands::origin(job)?,
        "twist" => commands::twist(job)?,
        "descend" => commands::descend(job)?,
        "quiver2rep" => commands::quiver2rep(job)?,
        "demo-quadratic" => commands::demo_quadratic(job)?,
        other => {
            return Err(CliError::schema(
                "/command",
                &format!("unknown command {other:?}; expected one of {COMMANDS:?}"),
            ))
        }
    };
    Ok(envelope(job, body))
}

fn envelope(job: &JobSpec, body: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("command".into(), json!(job.command));
    out.insert("seed".into(), json!(job.seed));
    out.insert(
        "bounds".into(),
        json!({
            "factor_bound": job.budget.factor_bound,
            "norm_height": job.budget.norm_height,
        }),
    );
    for (k, v) in body {
        out.insert(k, v);
    }
    Value::Object(out)
}

/// The diagnostic document printed to stderr on failure.
pub fn error_report(job: &JobSpec, err: &CliError) -> Value {
    let mut e = Map::new();
    e.insert("name".into(), json!(err.name));
    e.insert("message".into(), json!(err.message));
    if let Some(p) = &err.path {
        e.insert("path".into(), json!(p));
    }
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": job.command,
        "seed": job.seed,
        "bounds": {
            "factor_bound": job.budget.factor_bound,
            "norm_height": job.budget.norm_height,
        },
        "error": Value::Object(e),
    })
}
