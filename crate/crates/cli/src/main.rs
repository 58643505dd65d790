use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use singlift::problem::{self, IdealSpec, ProblemFile, Task};
use singlift::Error;

#[derive(Parser)]
#[command(name = "singlift", version, about = "Resolve plane curve singularities over finite fields and lift them to characteristic zero")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Log resolution (or embedded resolution of a curve)
    Resolve(Common),
    /// Log discrepancy table, lct and mld
    Invariants(Common),
    /// Lift the resolution and the generators to characteristic zero
    Lift(Common),
    /// Characteristic-zero curve with the same equisingularity type
    Campillo(Common),
    /// Toric lct and mld of a monomial multi-ideal
    Oracle(Common),
    /// Run the built-in battery
    Selftest {
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON); `-` reads standard input
    #[arg(long)]
    input: Option<String>,
    /// Field, e.g. `GF(7)` or `GF(2)[t]/(t^2+t+1)`; overrides the file
    #[arg(long)]
    field: Option<String>,
    /// Generators of a single ideal, used when no problem file is given
    generators: Vec<String>,
    /// Exponent of the ideal given on the command line
    #[arg(long, default_value = "1")]
    exponent: String,
    /// Write the JSON artifact here instead of standard output
    #[arg(long)]
    out: Option<String>,
    /// Write the dual graph in DOT format here
    #[arg(long)]
    dot: Option<String>,
    #[arg(long)]
    ext_cap: Option<usize>,
    #[arg(long)]
    blowup_cap: Option<usize>,
    #[arg(long)]
    degree_slack: Option<usize>,
    #[arg(long)]
    weight_bound: Option<u64>,
}

fn read_problem(c: &Common) -> Result<ProblemFile, Error> {
    let io = |e: std::io::Error| Error::InvalidInput(e.to_string());
    let mut p = match c.input.as_deref() {
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            ProblemFile::from_json(&s)?
        }
        Some(path) => ProblemFile::from_json(&fs::read_to_string(path).map_err(io)?)?,
        None => {
            let field = c
                .field
                .clone()
                .ok_or_else(|| Error::InvalidInput("give --input or --field with generators".into()))?;
            if c.generators.is_empty() {
                return Err(Error::InvalidInput("no generators given".into()));
            }
            let curve = (c.generators.len() == 1 && c.exponent == "1").then(|| c.generators[0].clone());
            ProblemFile {
                field,
                ideals: curve.is_none().then(|| {
                    vec![IdealSpec {
                        generators: c.generators.clone(),
                        exponent: c.exponent.clone(),
                    }]
                }),
                curve,
                tasks: Vec::new(),
                options: Default::default(),
            }
        }
    };
    if let Some(f) = &c.field {
        p.field = f.clone();
    }
    let o = &mut p.options;
    o.ext_cap = c.ext_cap.or(o.ext_cap);
    o.blowup_cap = c.blowup_cap.or(o.blowup_cap);
    o.degree_slack = c.degree_slack.or(o.degree_slack);
    o.weight_bound = c.weight_bound.or(o.weight_bound);
    o.out = c.out.clone().or(o.out.take());
    o.dot = c.dot.clone().or(o.dot.take());
    Ok(p)
}

fn emit(v: &Value, out: Option<&str>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(v).unwrap() + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(&problem::error_json(e)).unwrap());
    ExitCode::from(e.exit_code() as u8)
}

fn run(task: Task, c: &Common) -> Result<Option<Error>, Error> {
    let p = read_problem(c)?;
    let outcome = problem::run(&p, &[task])?;
    emit(&outcome.json, p.options.out.as_deref())?;
    if let (Some(path), Some(dot)) = (&p.options.dot, &outcome.dot) {
        fs::write(path, dot).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    }
    Ok(outcome.failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, common) = match &cli.command {
        Command::Resolve(c) => (Task::Resolve, c),
        Command::Invariants(c) => (Task::Invariants, c),
        Command::Lift(c) => (Task::Lift, c),
        Command::Campillo(c) => (Task::Campillo, c),
        Command::Oracle(c) => (Task::Oracle, c),
        Command::Selftest { out } => {
            let (v, failed) = problem::selftest();
            if let Err(e) = emit(&v, out.as_deref()) {
                return fail(&e);
            }
            for f in &failed {
                eprintln!("FAIL {f}");
            }
            return if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(3) };
        }
    };
    match run(task, common) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) => {
            eprintln!("{}", serde_json::to_string(&problem::error_json(&e)).unwrap());
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => fail(&e),
    }
}
