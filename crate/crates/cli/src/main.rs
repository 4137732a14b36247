use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use meadowlab::amalgam::{amalgamate, verify_amalgam};
use meadowlab::crosscheck;
use meadowlab::dominion::{
    dominion_field_case, dominion_icm, dominion_oracle, dominion_sg, OracleMode,
};
use meadowlab::laws::{run_suite, Suite};
use meadowlab::structure::Element;
use meadowlab::termlang::{eval, parse_term, Env};
use meadowlab::wire;
use meadowlab::Error;

/// Finite fields, implicitly closed meadows, dominions and amalgams.
///
/// Algebra, generator and span arguments are paths to JSON files, `-` for
/// standard input, or inline JSON text.
#[derive(Parser)]
#[command(name = "meadowlab", version)]
struct Cli {
    /// Largest carrier any exhaustive routine may enumerate.
    #[arg(long, global = true, env = "MEADOWLAB_CAP", default_value_t = 64)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term in an algebra.
    Eval {
        algebra: String,
        term: String,
        /// Variable bindings as NAME=JSON, e.g. x=3 or x=[0,1].
        #[arg(long = "bind", short = 'b')]
        bindings: Vec<String>,
    },
    /// Run a law suite.
    Check {
        algebra: String,
        #[arg(value_parser = ["ring", "meadow", "icm", "reduced", "regular", "weakly-rooted", "discriminator", "all"])]
        suite: String,
    },
    /// Compute a dominion.
    Dominion {
        algebra: String,
        generators: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Sg)]
        method: MethodArg,
        /// Largest codomain the oracle enumerates.
        #[arg(long, default_value_t = 64)]
        bound: usize,
        /// Codomain family for the oracle (defaults by shape of B).
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Amalgamate a span.
    Amalgamate { span: String },
    /// Run the verification matrix.
    Crosscheck {
        #[arg(long, default_value_t = 16)]
        max_carrier: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Sg,
    Field,
    Oracle,
    Icm,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Galois,
    Fields,
    Products,
}

enum Failure {
    /// Error kind and message.
    Usage(&'static str, String),
    Domain(Error),
    /// A check ran and reported failure; its report is already on stdout.
    Verdict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } => Failure::Usage(e.kind(), e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Usage("Io", e.to_string()))?
    } else if arg.trim_start().starts_with(['{', '[']) && !Path::new(arg).exists() {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage("Io", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage("JsonSyntax", format!("{arg}: {e}")))
}

fn emit(v: &Value) {
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Eval {
            algebra,
            term,
            bindings,
        } => {
            let alg = wire::algebra_from_json(&read_json(&algebra)?, cap)?;
            let t = parse_term(&term)?;
            let mut env = Env::new();
            for b in bindings {
                let (name, value) = b
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage("Usage", format!("binding `{b}` is not NAME=JSON")))?;
                let v = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
                env.insert(name.to_string(), wire::element_from_json(&alg, &v)?);
            }
            let value: Element = eval(&t, &alg, &env)?;
            emit(&wire::element_to_json(&value));
            Ok(())
        }
        Command::Check { algebra, suite } => {
            let alg = wire::algebra_from_json(&read_json(&algebra)?, cap)?;
            let suite: Suite = suite.parse()?;
            let reports = run_suite(&alg, suite, cap)?;
            for r in &reports {
                emit(&wire::law_report_to_json(r));
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Dominion {
            algebra,
            generators,
            method,
            bound,
            mode,
        } => {
            let alg = wire::algebra_from_json(&read_json(&algebra)?, cap)?;
            let b = alg.as_product().ok_or(Error::NotProduct)?;
            let gens = wire::generators_from_json(&alg, &read_json(&generators)?)?;
            let mode = mode.map(|m| match m {
                ModeArg::Galois => OracleMode::Galois,
                ModeArg::Fields => OracleMode::Fields,
                ModeArg::Products => OracleMode::Products,
            });
            let result = match method {
                MethodArg::Sg => dominion_sg(&b, &gens, cap)?,
                MethodArg::Field => dominion_field_case(&b, &gens, cap)?,
                MethodArg::Oracle => dominion_oracle(&b, &gens, bound, mode, cap)?,
                MethodArg::Icm => dominion_icm(&b, &gens, cap)?,
            };
            emit(&wire::dominion_to_json(&result, cap));
            Ok(())
        }
        Command::Amalgamate { span } => {
            let span = wire::span_from_json(&read_json(&span)?, cap)?;
            let am = amalgamate(&span)?;
            let verified = verify_amalgam(&span, &am, cap);
            emit(&wire::amalgam_to_json(&am, verified, cap));
            if verified {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Crosscheck { max_carrier, seed } => {
            let summary = crosscheck::run(max_carrier, cap, seed)?;
            emit(&summary.to_json());
            if summary.passed() {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Usage(kind, msg)) => {
            eprintln!("{}", json!({"error": kind, "message": msg}));
            ExitCode::from(2)
        }
    }
}
