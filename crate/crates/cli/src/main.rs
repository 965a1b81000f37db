use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use schur_forge::Budget;
use schur_forge_cli::{error_report, run_job, JobSpec, COMMANDS};

/// Exact computations with representations, quaternion algebras and
/// quadratic descent.  Reads a JSON job from stdin or a file, writes a
/// JSON report to stdout, diagnostics to stderr.  Exit codes: 0 computed,
/// 2 invalid input, 3 search budget exhausted.
#[derive(Parser)]
#[command(name = "schur-forge", version)]
struct Args {
    /// Command to run (schur, endo, simple, intertwine, quaternion,
    /// hilbert, split, origin, twist, descend, quiver2rep, demo-quadratic)
    command: String,

    /// Input document; stdin when omitted or "-"
    #[arg(long)]
    input: Option<PathBuf>,

    /// Seed for every randomized search in the job
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Trial-division bound for integer factorization
    #[arg(long = "bound-factor")]
    bound_factor: Option<u64>,

    /// Height bound for the quadratic norm-equation search
    #[arg(long = "bound-norm-search")]
    bound_norm_search: Option<i64>,

    /// For `schur`: require the quiver form of the input
    #[arg(long)]
    quiver: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut budget = Budget::default();
    if let Some(b) = args.bound_factor {
        budget.factor_bound = b;
    }
    if let Some(b) = args.bound_norm_search {
        budget.norm_height = b;
    }

    let raw = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map(|_| buf)
        }
    };
    let raw = match raw {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": {"name": "Io", "message": e.to_string()}}));
            return ExitCode::from(2);
        }
    };

    let job = JobSpec {
        command: args.command.clone(),
        input: match serde_json::from_str(&raw) {
            Ok(v) => v,
            Err(e) => {
                eprintln!(
                    "{}",
                    serde_json::json!({"error": {
                        "name": "SchemaViolation",
                        "message": format!("input is not valid JSON: {e}"),
                    }})
                );
                return ExitCode::from(2);
            }
        },
        seed: args.seed,
        budget,
        quiver: args.quiver,
    };

    if !COMMANDS.contains(&job.command.as_str()) {
        eprintln!(
            "{}",
            serde_json::json!({"error": {
                "name": "SchemaViolation",
                "message": format!("unknown command {:?}; expected one of {:?}", job.command, COMMANDS),
            }})
        );
        return ExitCode::from(2);
    }

    match run_job(&job) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::to_string(&error_report(&job, &err)).expect("serializable")
            );
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
