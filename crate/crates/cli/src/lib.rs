//! The `ghz` command-line driver: JSON scenarios in, text or JSON reports out.
//!
//! Exit codes: 0 for a positive or complete verdict, 1 for a negative verdict
//! with witnesses, 2 for usage and parse errors.

pub mod commands;
pub mod report;
pub mod scenario;

use std::time::Instant;

use clap::{Parser, ValueEnum};

pub use commands::{run_command, Flags};
pub use report::Report;
pub use scenario::{parse_scenario, serialize_scenario, Scenario, ScenarioFile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid scenario: {0}")]
    Semantic(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Core(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Eval,
    Piece,
    Generators,
    Colorings,
    Roots,
    Coherent,
    Apply,
    Verify,
    Classify,
    ToricCheck,
    Example,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "ghz", version, about = "Horizontal G_a-actions on complexity-one torus varieties")]
pub struct Args {
    pub command: Command,
    /// Builtin name for `example`.
    pub name: Option<String>,
    #[arg(long)]
    pub scenario: Option<std::path::PathBuf>,
    #[arg(long)]
    pub example: Option<String>,
    /// Weight, comma separated.
    #[arg(short, long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Coefficient f of f*chi^m for `apply`.
    #[arg(long, allow_hyphen_values = true)]
    pub coeff: Option<String>,
    #[arg(long)]
    pub json: bool,
    /// Accept support points whose irreducibility cannot be proven.
    #[arg(long)]
    pub trust_irreducible: bool,
    /// Base field override: Q, F_p or F_p(l).
    #[arg(long)]
    pub field: Option<String>,
    /// Command to run on an `example`.
    #[arg(long)]
    pub run: Option<Command>,
}

/// Builtin scenarios and the command `example NAME` runs by default.
pub const BUILTINS: &[(&str, &str, Command)] = &[
    ("w25-imperfect", include_str!("../scenarios/w25-imperfect.json"), Command::Verify),
    ("w25-rational", include_str!("../scenarios/w25-rational.json"), Command::Coherent),
    ("char2-ramified", include_str!("../scenarios/char2-ramified.json"), Command::Verify),
    ("toric-demo", include_str!("../scenarios/toric-demo.json"), Command::Verify),
];

pub fn builtin(name: &str) -> Result<(&'static str, Command), CliError> {
    BUILTINS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, text, cmd)| (*text, *cmd))
        .ok_or_else(|| {
            let names: Vec<&str> = BUILTINS.iter().map(|b| b.0).collect();
            CliError::Usage(format!("unknown example '{name}' (available: {})", names.join(", ")))
        })
}

pub fn builtin_examples() -> Vec<(&'static str, Scenario)> {
    BUILTINS.iter().map(|(n, text, _)| (*n, parse_scenario(text).expect("builtin scenarios parse"))).collect()
}

fn parse_m(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad weight '{s}' (expected e.g. \"1,-2\")"))))
        .collect()
}

/// Parses the document, applying the `--field` and `--trust-irreducible` overrides.
fn load(text: &str, args: &Args) -> Result<Scenario, CliError> {
    let mut file: ScenarioFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    if let Some(f) = &args.field {
        file.field = scenario::parse_field_name(f)?;
    }
    if args.trust_irreducible {
        file.trust = "trusted".into();
    }
    file.validate()
}

pub fn execute(args: &Args) -> Result<Report, CliError> {
    let start = Instant::now();
    let (text, label, cmd) = match (args.command, &args.scenario, &args.example) {
        (Command::Example, _, _) => {
            let Some(name) = args.name.as_ref().or(args.example.as_ref()) else {
                let mut r = Report::new("example", "-");
                for (n, _, c) in BUILTINS {
                    r.detail(format!("{n} (runs {})", c.name()));
                }
                r.positive(format!("{} builtin examples", BUILTINS.len()));
                return Ok(r);
            };
            let (text, default) = builtin(name)?;
            (text.to_string(), name.clone(), args.run.unwrap_or(default))
        }
        (_, Some(_), Some(_)) => return Err(CliError::Usage("give either --scenario or --example".into())),
        (cmd, Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            (text, path.display().to_string(), cmd)
        }
        (cmd, None, Some(name)) => (builtin(name)?.0.to_string(), name.clone(), cmd),
        (_, None, None) => return Err(CliError::Usage("give --scenario FILE or --example NAME".into())),
    };
    if cmd == Command::Example {
        return Err(CliError::Usage("--run example is not a scenario command".into()));
    }
    let s = load(&text, args)?;
    let flags = Flags { m: args.m.as_deref().map(parse_m).transpose()?, order: args.order, coeff: args.coeff.clone() };
    let mut r = Report::new(&cmd.name(), &label);
    run_command(&s, cmd, &flags, &mut r)?;
    r.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}
