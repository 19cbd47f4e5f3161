//! `hypgrp`: decision procedures for hyperbolic groups from the command line.

mod query;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use hypgrp_core::{load_presentation, BuildOptions, ErrorClass, HyperbolicContext, KProvider};
use rayon::prelude::*;

use query::Query;
use report::{Failure, QueryResult};

#[derive(Parser, Debug)]
#[command(name = "hypgrp", version, about = "Decision procedures for word-hyperbolic groups")]
struct Cli {
    /// Presentation file.
    group: PathBuf,

    #[command(subcommand)]
    command: TopCommand,

    /// Emit one JSON object per result line.
    #[arg(long, global = true)]
    json: bool,

    /// Radius for the local-to-global check at context construction.
    #[arg(long, global = true, default_value_t = 6)]
    validation_radius: usize,

    /// Largest admissible card(S ∪ S⁻¹)^K1 in the double-coset bound.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    exp_cap: u64,

    /// Stability constant provider: auto, tree or conservative.
    #[arg(long, global = true, default_value = "auto")]
    k_provider: KProvider,

    /// Worker threads for batch files.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum TopCommand {
    #[command(flatten)]
    Query(Query),
    /// Run one query per line of FILE (`#` starts a comment).
    Batch { file: PathBuf },
}

/// Parser for a single batch line.
#[derive(Parser, Debug)]
#[command(no_binary_name = true)]
struct Line {
    #[command(subcommand)]
    query: Query,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("hypgrp: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&cli.group)
        .with_context(|| format!("cannot read {}", cli.group.display()))
        .map_err(Failure::input)?;
    let options = BuildOptions {
        validation_radius: cli.validation_radius,
        exp_cap: cli.exp_cap,
        k_provider: cli.k_provider,
        ..BuildOptions::default()
    };
    let ctx = load_presentation(&text)
        .and_then(|p| HyperbolicContext::build(p, options))
        .map_err(|e| Failure::from_core(e, &format!("{}", cli.group.display())))?;
    match &cli.command {
        TopCommand::Query(q) => {
            let result = query::execute(&ctx, q);
            emit(cli, &result);
            Ok(exit_code(&result))
        }
        TopCommand::Batch { file } => run_batch(cli, &ctx, file),
    }
}

fn run_batch(cli: &Cli, ctx: &HyperbolicContext, file: &PathBuf) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))
        .map_err(Failure::input)?;
    let mut queries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens =
            tokenize(line).with_context(|| format!("{}:{}", file.display(), lineno + 1)).map_err(Failure::input)?;
        let parsed = Line::try_parse_from(tokens)
            .with_context(|| format!("{}:{}: cannot parse `{line}`", file.display(), lineno + 1))
            .map_err(Failure::input)?;
        queries.push(parsed.query);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Failure::internal(anyhow::anyhow!(e)))?;
    let results: Vec<QueryResult> = pool.install(|| queries.par_iter().map(|q| query::execute(ctx, q)).collect());
    for r in &results {
        emit(cli, r);
    }
    Ok(results.iter().map(exit_code).max().unwrap_or(0))
}

/// Splits on whitespace; double quotes group, so `""` is the empty word.
fn tokenize(line: &str) -> anyhow::Result<Vec<String>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    let mut pending = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                pending = true;
            }
            c if c.is_whitespace() && !quoted => {
                if pending {
                    out.push(std::mem::take(&mut current));
                    pending = false;
                }
            }
            c => {
                current.push(c);
                pending = true;
            }
        }
    }
    anyhow::ensure!(!quoted, "unterminated quote");
    if pending {
        out.push(current);
    }
    Ok(out)
}

fn emit(cli: &Cli, result: &QueryResult) {
    if cli.json {
        println!("{}", serde_json::to_string(result).expect("serializable result"));
    } else {
        print!("{}", report::render_text(result));
    }
    if let Some(err) = &result.error {
        eprintln!("hypgrp: {}: {}", result.command, err.message);
    }
}

fn exit_code(result: &QueryResult) -> u8 {
    match &result.error {
        None => 0,
        Some(e) => match e.class {
            ErrorClass::Input => 1,
            ErrorClass::Infeasible => 2,
            ErrorClass::Internal => 3,
        },
    }
}
