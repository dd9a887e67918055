//! `rdst`: solve, generate, validate and benchmark reload-cost diameter
//! spanning tree instances.
//!
//! Exit codes: 0 success, 1 failed checks or I/O, 2 decision answered No,
//! 64 malformed input, 65 algorithm or instance mismatch, 70 resource cap.

mod bench;
mod error;
mod gen;
mod solve;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reload_core::decomposition::{parse_decomposition, validate_decomposition};
use reload_core::oracle::DEFAULT_MAX_TREES;
use reload_core::parse_instance;
use reload_core::twdp::FptConfig;
use serde_json::Value;

use crate::error::{read, write, CliError};
use crate::solve::{Algo, Outcome, SolveOptions};

#[derive(Parser)]
#[command(name = "rdst", version, about = "Minimum reload-cost diameter spanning trees")]
struct Cli {
    /// Print only the one-line JSON summary.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an optimum tree, or decide whether one within a budget exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Decide whether some spanning tree has diameter at most this value.
        #[arg(long, value_name = "K")]
        decision: Option<u64>,
        /// Tree decomposition in PACE `.td` format.
        #[arg(long, value_name = "PATH")]
        td: Option<PathBuf>,
        /// Spanning-tree enumeration budget for `--algo brute`.
        #[arg(long, default_value_t = DEFAULT_MAX_TREES)]
        max_trees: u64,
        /// Largest dynamic-programming table allowed.
        #[arg(long, default_value_t = FptConfig::default().table_cap)]
        table_cap: usize,
    },
    /// Write an instance built by a reduction or at random.
    Gen {
        #[arg(value_enum)]
        reduction: gen::Reduction,
        /// Source file (none for the random generators) followed by an optional output path.
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        #[arg(long, default_value_t = 10)]
        max_cost: u64,
        #[arg(long, default_value_t = 0.5)]
        cycle_prob: f64,
        /// Target edge count for random-graph.
        #[arg(long, default_value_t = 18)]
        m: usize,
        /// Degree bound for random-graph.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Rewrite the formula so every variable occurs three times (3sat-deg3).
        #[arg(long)]
        normalize: bool,
    },
    /// Check an instance and optionally a decomposition.
    Validate {
        instance: PathBuf,
        #[arg(long, value_name = "PATH")]
        td: Option<PathBuf>,
    },
    /// Run several algorithms on every `.rct` file in a directory and emit CSV.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto,brute,cactus,twdp")]
        algos: Vec<Algo>,
        #[arg(long, default_value_t = 200_000)]
        max_trees: u64,
        #[arg(long, default_value_t = FptConfig::default().table_cap)]
        table_cap: usize,
    },
}

/// Human-readable text, JSON summary and the exit code of a finished command.
struct Report {
    text: String,
    summary: Value,
    code: u8,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Solve {
            instance,
            algo,
            decision,
            td,
            max_trees,
            table_cap,
        } => {
            let name = instance.display().to_string();
            let inst = parse_instance(&read(instance)?).map_err(|e| CliError::core(&name, e))?;
            let td = match td {
                Some(p) => {
                    let tdn = p.display().to_string();
                    let td = parse_decomposition(&read(p)?).map_err(|e| CliError::core(&tdn, e))?;
                    validate_decomposition(&inst.graph, &td)
                        .map_err(|v| CliError::Mismatch(format!("{tdn}: invalid decomposition: {v}")))?;
                    Some(td)
                }
                None => None,
            };
            let opts = SolveOptions {
                algo: *algo,
                decision: *decision,
                td,
                max_trees: *max_trees,
                table_cap: *table_cap,
            };
            let report = solve::solve(&inst, &opts)?;
            eprintln!("time: {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
            let code = match report.outcome {
                Outcome::Decision { yes: false, .. } => 2,
                _ => 0,
            };
            Ok(Report {
                text: report.human(),
                summary: report.json(),
                code,
            })
        }
        Command::Gen {
            reduction,
            paths,
            n,
            seed,
            colors,
            max_cost,
            cycle_prob,
            m,
            max_degree,
            normalize,
        } => {
            let takes_source = !matches!(reduction, gen::Reduction::RandomCactus | gen::Reduction::RandomGraph);
            let (source, out) = match (takes_source, paths.as_slice()) {
                (true, [s]) => (Some(s), None),
                (true, [s, o]) => (Some(s), Some(o)),
                (false, []) => (None, None),
                (false, [o]) => (None, Some(o)),
                _ => return Err(CliError::Mismatch("unexpected number of paths for this reduction".into())),
            };
            let params = gen::RandomParams {
                n: *n,
                seed: *seed,
                colors: *colors,
                max_cost: *max_cost,
                cycle_prob: *cycle_prob,
                m: *m,
                max_degree: *max_degree,
            };
            let inst = gen::generate(*reduction, source, *normalize, &params)?;
            let text = gen::text(&inst);
            let summary = gen::summary(*reduction, &inst);
            match out {
                Some(o) => {
                    write(o, &text)?;
                    Ok(Report {
                        text: format!("wrote {} ({} vertices, {} edges)\n", o.display(), inst.graph.n(), inst.graph.m()),
                        summary,
                        code: 0,
                    })
                }
                None => {
                    // The instance itself is the output; the summary goes to stderr.
                    print!("{text}");
                    eprintln!("{summary}");
                    Ok(Report {
                        text: String::new(),
                        summary: Value::Null,
                        code: 0,
                    })
                }
            }
        }
        Command::Validate { instance, td } => {
            let checks = validate::validate(instance, td.as_deref())?;
            let failed = checks.iter().filter(|c| c.status == validate::Status::Fail).count();
            Ok(Report {
                text: validate::human(&checks),
                summary: validate::summary(&checks),
                code: if failed > 0 { 1 } else { 0 },
            })
        }
        Command::Bench {
            dir,
            algos,
            max_trees,
            table_cap,
        } => {
            let b = bench::bench(dir, algos, *max_trees, *table_cap)?;
            for d in &b.disagreements {
                eprintln!("disagreement: {d}");
            }
            Ok(Report {
                text: bench::csv(&b),
                summary: bench::summary(&b),
                code: if b.disagreements.is_empty() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if !cli.json {
                print!("{}", r.text);
            }
            if !r.summary.is_null() {
                println!("{}", r.summary);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string(), "exit": e.exit_code() }));
            }
            ExitCode::from(e.exit_code())
        }
    }
}
