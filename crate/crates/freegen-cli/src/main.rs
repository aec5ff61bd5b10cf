use clap::Parser;
use freegen_cli::config::{Command, GridSpec, DEFAULT_SEED};
use freegen_cli::{parse_config, run, CliError};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Distributions, transition kernels, generators and identity checks for
/// free, monotone and q-deformed Levy processes.
#[derive(Debug, Parser)]
#[command(name = "freegen", version)]
struct Args {
    /// Command to run; may instead come from the config file.
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, help = format!("Seed for randomized checks [default: {DEFAULT_SEED}]"))]
    seed: Option<u64>,
    /// Suite to verify (repeatable); none means all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Output grid as LO:HI:N.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// Stieltjes inversion height; omit for exact boundary values.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    monotone: bool,
    #[arg(long)]
    two_state: bool,
    /// Named measure such as "semicircle(0,1)" or a JSON object.
    #[arg(long)]
    measure: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
}

fn merged(args: Args) -> Result<String, CliError> {
    let mut map = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            match serde_json::from_str::<Value>(&text).map_err(|e| CliError::Usage(format!("config: {e}")))? {
                Value::Object(m) => m,
                _ => return Err(CliError::Usage("config: expected a JSON object".into())),
            }
        }
        None => Map::new(),
    };
    let mut set = |k: &str, v: Value| {
        map.insert(k.to_string(), v);
    };
    if let Some(c) = args.command {
        set("command", serde_json::to_value(c)?);
    }
    if let Some(m) = args.measure {
        let v = if m.trim_start().starts_with('{') {
            serde_json::from_str(&m).map_err(|e| CliError::Usage(format!("measure: {e}")))?
        } else {
            Value::String(m)
        };
        set("measure", v);
    }
    for (k, v) in [("alpha", args.alpha), ("s", args.s), ("t", args.t), ("x", args.x), ("q", args.q), ("eps", args.eps)] {
        if let Some(v) = v {
            set(k, json!(v));
        }
    }
    if let Some(g) = args.grid {
        set("grid", serde_json::to_value(g)?);
    }
    if let Some(o) = args.out {
        set("out", json!(o));
    }
    if let Some(s) = args.seed {
        set("seed", json!(s));
    }
    if !args.suites.is_empty() {
        set("suites", json!(args.suites));
    }
    if args.monotone {
        set("monotone", json!(true));
    }
    if args.two_state {
        set("two_state", json!(true));
    }
    Ok(Value::Object(map).to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = merged(args).and_then(|text| parse_config(&text)).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
