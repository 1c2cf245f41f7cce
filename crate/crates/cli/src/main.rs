//! `realrank`: real rank, apolarity, coincident root loci and real-rootedness
//! decisions for binary forms from the command line.

mod commands;
mod render;

use clap::{Parser, Subcommand};
use commands::Output;
use realrank::decide::Budget;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

/// Version of the JSON envelope; bumped on incompatible changes.
const SCHEMA_VERSION: u32 = 1;
const SCHEMA: &str = include_str!("../schema/output.schema.json");

#[derive(Parser)]
#[command(name = "realrank", version, about = "Exact real rank computations for binary forms")]
struct Cli {
    /// Print a versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget for decisions, in seconds.
    #[arg(long, global = true, value_name = "N")]
    budget_seconds: Option<f64>,
    /// Seed of the witness search.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Real rank of a binary form in x, y.
    Rank {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Exit with code 3 instead of reporting a range for squarefree forms of degree at most 8.
        #[arg(long)]
        exact: bool,
        /// Also print a decomposition along the witness, to this many decimals.
        #[arg(long, value_name = "DIGITS")]
        decompose: Option<usize>,
    },
    /// Membership in a coincident root locus, or with --dual in its dual variety.
    Member {
        /// Partition such as 4,4.
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        dual: bool,
    },
    /// Generators of the apolar ideal.
    Apolar {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The form whose apolar ideal is generated by two operators.
    Recover {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        gprime: String,
    },
    /// Components of the real rank boundary for degree d and rank r.
    Boundary { d: u32, r: u32 },
    /// Dimension, degree, dual variety and Chow-type hypersurfaces of a locus.
    Crl { lambda: String },
    /// Real ranks of a family in the parameter e at the given values.
    Scan {
        #[arg(allow_hyphen_values = true)]
        family: String,
        /// Comma-separated rationals, e.g. -1/10,0,1/10.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Write the rows as CSV to this file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Does the span of the given operators contain a member with distinct real roots?
    Decide {
        #[arg(required = true, allow_hyphen_values = true)]
        basis: Vec<String>,
        /// Permutation of the basis indices; the first spans the base chart.
        #[arg(long, value_name = "LIST")]
        chart_order: Option<String>,
    },
    /// Distinct real roots of a univariate polynomial in x.
    Sturm {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
    },
    /// Print the JSON schema of the output documents.
    Schema,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rank { .. } => "rank",
            Command::Member { .. } => "member",
            Command::Apolar { .. } => "apolar",
            Command::Recover { .. } => "recover",
            Command::Boundary { .. } => "boundary",
            Command::Crl { .. } => "crl",
            Command::Scan { .. } => "scan",
            Command::Decide { .. } => "decide",
            Command::Sturm { .. } => "sturm",
            Command::Schema => "schema",
        }
    }
}

fn run(cmd: &Command, budget: &Budget) -> realrank::Result<Output> {
    match cmd {
        Command::Rank { expr, exact, decompose } => commands::rank(expr, budget, *exact, *decompose),
        Command::Member { lambda, expr, dual } => commands::member(lambda, expr, *dual),
        Command::Apolar { expr } => commands::apolar(expr),
        Command::Recover { g, gprime } => commands::recover_cmd(g, gprime),
        Command::Boundary { d, r } => commands::boundary(*d, *r),
        Command::Crl { lambda } => commands::crl(lambda),
        Command::Scan { family, values, csv } => commands::scan(family, values, csv.as_deref(), budget),
        Command::Decide { basis, chart_order } => commands::decide(basis, budget, chart_order.as_deref()),
        Command::Sturm { expr, from, to } => commands::sturm(expr, from.as_deref(), to.as_deref()),
        Command::Schema => unreachable!("handled before dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Schema = cli.command {
        print!("{SCHEMA}");
        return ExitCode::SUCCESS;
    }
    let mut budget = Budget::default();
    if let Some(s) = cli.budget_seconds {
        if !(s.is_finite() && s >= 0.0) {
            eprintln!("error: --budget-seconds must be a nonnegative number");
            return ExitCode::from(commands::USAGE as u8);
        }
        budget = budget.with_time(Duration::from_secs_f64(s));
    }
    if let Some(seed) = cli.seed {
        budget = budget.with_seed(seed);
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = cli.command.name();
    let code = match run(&cli.command, &budget) {
        Ok(out) => {
            if cli.json {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "args": args,
                    "exit_code": out.code,
                    "result": out.payload,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            let code = commands::error_code(&e);
            if cli.json {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "args": args,
                    "exit_code": code,
                    "error": {"kind": commands::error_kind(&e), "message": e.to_string()},
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
