//! Cross-solver agreement over a directory of instances.

use std::path::{Path, PathBuf};

use reload_core::decomposition::parse_decomposition;
use reload_core::parse_instance;
use serde_json::{json, Value};

use crate::error::{read, CliError};
use crate::solve::{solve, Algo, Outcome, SolveOptions};

#[derive(Debug, Clone)]
pub struct Row {
    pub instance: String,
    pub algo: &'static str,
    /// Optimum, or a short reason why none was produced.
    pub result: Result<u64, &'static str>,
    pub millis: f64,
}

pub struct BenchResult {
    pub rows: Vec<Row>,
    pub instances: usize,
    pub disagreements: Vec<String>,
}

fn algo_name(a: Algo) -> &'static str {
    match a {
        Algo::Auto => "auto",
        Algo::Brute => "brute",
        Algo::Cactus => "cactus",
        Algo::Twdp => "twdp",
    }
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let p = entry.map_err(io)?.path();
        if p.extension().is_some_and(|e| e == "rct") {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs each algorithm on every `*.rct` file in `dir`. A sibling `.td`
/// file, when present, is handed to the decomposition solver.
pub fn bench(dir: &Path, algos: &[Algo], max_trees: u64, table_cap: usize) -> Result<BenchResult, CliError> {
    let files = instance_files(dir)?;
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for path in &files {
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let inst = match parse_instance(&read(path)?) {
            Ok(inst) => inst,
            Err(e) => {
                eprintln!("skipping {name}: {e}");
                rows.push(Row {
                    instance: name,
                    algo: "-",
                    result: Err("invalid"),
                    millis: 0.0,
                });
                continue;
            }
        };
        let td_path = path.with_extension("td");
        let td = if td_path.exists() {
            Some(parse_decomposition(&read(&td_path)?).map_err(|e| CliError::core(td_path.display().to_string(), e))?)
        } else {
            None
        };
        let mut seen = None;
        for &algo in algos {
            let opts = SolveOptions {
                algo,
                decision: None,
                td: td.clone(),
                max_trees,
                table_cap,
            };
            let res = solve(&inst, &opts);
            let result = match &res {
                Ok(r) => match r.outcome {
                    Outcome::Optimum(opt) => Ok(opt),
                    Outcome::Decision { .. } => unreachable!("bench runs optimization"),
                },
                Err(e) if e.exit_code() == 70 => Err("cap"),
                Err(e) if e.exit_code() == 65 => Err("n/a"),
                Err(_) => Err("error"),
            };
            if let Ok(opt) = result {
                match seen {
                    None => seen = Some(opt),
                    Some(s) if s != opt && disagreements.last() != Some(&name) => {
                        disagreements.push(name.clone());
                    }
                    _ => {}
                }
            }
            rows.push(Row {
                instance: name.clone(),
                algo: algo_name(algo),
                result,
                millis: res.map_or(0.0, |r| r.elapsed.as_secs_f64() * 1e3),
            });
        }
    }
    Ok(BenchResult {
        rows,
        instances: files.len(),
        disagreements,
    })
}

pub fn csv(b: &BenchResult) -> String {
    let mut out = String::from("instance,algo,opt,time_ms\n");
    for r in &b.rows {
        let opt = match r.result {
            Ok(v) => v.to_string(),
            Err(why) => why.to_string(),
        };
        out.push_str(&format!("{},{},{},{:.3}\n", r.instance, r.algo, opt, r.millis));
    }
    out
}

pub fn summary(b: &BenchResult) -> Value {
    json!({
        "instances": b.instances,
        "runs": b.rows.len(),
        "agree": b.disagreements.is_empty(),
        "disagreements": b.disagreements,
    })
}
