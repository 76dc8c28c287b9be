use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use normkit::commands::{execute, RunConfig};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "normkit", version, about = "Certified computations on finite-dimensional normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Sample count; accepts forms like 1e4.
    #[arg(long, global = true, default_value = "1e4", value_parser = parse_count)]
    samples: usize,
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct Input {
    /// JSON file, inline JSON, or `-` for stdin.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a norm: {"norm", "x"}.
    Norm(Input),
    /// Fuzz the norm axioms: {"norm"}.
    Axioms(Input),
    /// Operator norm: {"matrix", "source", "target"}.
    Opnorm(Input),
    /// Isometry test for an operator.
    Isometry(Input),
    /// Equivalence constants against the basis max-norm: {"basis", "norm"}.
    Equiv(Input),
    /// Norm of a truncated sequence.
    Lp(Input),
    /// Hoelder inequality: {"x", "y"}.
    Holder(Input),
    /// Minkowski inequality: {"x", "y"}.
    Minkowski(Input),
    /// Norm of a functional on l^p: {"f", "m"}.
    Dual(Input),
    /// Limit of an l^2 Cauchy family: {"sequences", "eps"} or {"harmonic"}.
    Cauchy(Input),
    /// Norm-preserving extension: {"basis", "values", "norm", "x0"?}.
    HbExtend(Input),
    /// Norming functional: {"x", "norm"}.
    Norming(Input),
    /// Functional vanishing on a subspace: {"x", "basis", "norm"}.
    Annihilate(Input),
    /// Bilinear form norm: {"form"} or {"xp", "yp", "left", "right"}.
    Bilinear(Input),
    /// Tensor embedding {"f", "g"} or linearization {"psi", "a", "b"}.
    Tensor(Input),
    /// Run the property suite; optional {"norms": [...]} adds norms to check.
    Suite { input: Option<String> },
}

fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 1.0 && x.fract() == 0.0 && x <= 1e12 => Ok(x as usize),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn read_input(src: &str) -> Result<Value, String> {
    let text = match src.trim_start().chars().next() {
        Some('{') | Some('[') => src.to_string(),
        _ if src == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            s
        }
        _ => std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?,
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, src) = match &cli.command {
        Command::Norm(i) => ("norm", Some(&i.input)),
        Command::Axioms(i) => ("axioms", Some(&i.input)),
        Command::Opnorm(i) => ("opnorm", Some(&i.input)),
        Command::Isometry(i) => ("isometry", Some(&i.input)),
        Command::Equiv(i) => ("equiv", Some(&i.input)),
        Command::Lp(i) => ("lp", Some(&i.input)),
        Command::Holder(i) => ("holder", Some(&i.input)),
        Command::Minkowski(i) => ("minkowski", Some(&i.input)),
        Command::Dual(i) => ("dual", Some(&i.input)),
        Command::Cauchy(i) => ("cauchy", Some(&i.input)),
        Command::HbExtend(i) => ("hb-extend", Some(&i.input)),
        Command::Norming(i) => ("norming", Some(&i.input)),
        Command::Annihilate(i) => ("annihilate", Some(&i.input)),
        Command::Bilinear(i) => ("bilinear", Some(&i.input)),
        Command::Tensor(i) => ("tensor", Some(&i.input)),
        Command::Suite { input } => ("suite", input.as_ref()),
    };
    let input = match src.map(|s| read_input(s)) {
        None => Value::Null,
        // a fixture file carries its input under "input"
        Some(Ok(Value::Object(mut m))) if m.get("command").and_then(Value::as_str) == Some(name) => {
            m.remove("input").unwrap_or(Value::Null)
        }
        Some(Ok(v)) => v,
        Some(Err(e)) => {
            eprintln!("normkit {name}: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        seed: cli.seed,
        tol: cli.tol,
        samples: cli.samples,
    };
    let out = execute(name, input, &cfg);
    if let Some(e) = out.error {
        eprintln!("normkit {name}: {e}");
    }
    if let Some(report) = out.report {
        if cli.json {
            println!("{}", report.to_json());
        } else {
            print!("{}", report.to_text());
        }
    }
    ExitCode::from(out.code)
}
