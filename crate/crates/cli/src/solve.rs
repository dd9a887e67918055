//! Algorithm selection and the solve report.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use reload_core::cactus::CactusSolver;
use reload_core::decomposition::{heuristic_decomposition, TreeDecomposition};
use reload_core::oracle::{decide_bruteforce, solve_bruteforce};
use reload_core::search::minimize_budget;
use reload_core::twdp::{FptConfig, FptSolver};
use reload_core::{Cost, EdgeId, Instance, SpanningForest};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Brute,
    Cactus,
    Twdp,
}

/// Structural class used by automatic selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Forest,
    Cycle,
    Cactus,
    General,
}

impl Class {
    pub fn of(inst: &Instance) -> Class {
        let g = &inst.graph;
        if g.is_forest() {
            Class::Forest
        } else if g.max_degree() <= 2 {
            Class::Cycle
        } else if reload_core::cactus::is_cactus(g) {
            Class::Cactus
        } else {
            Class::General
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Class::Forest => "forest",
            Class::Cycle => "cycle",
            Class::Cactus => "cactus",
            Class::General => "general",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algo: Algo,
    pub decision: Option<Cost>,
    pub td: Option<TreeDecomposition>,
    pub max_trees: u64,
    pub table_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Optimum(Cost),
    Decision { k: Cost, yes: bool },
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub n: usize,
    pub m: usize,
    pub colors: usize,
    pub max_degree: usize,
    pub class: Class,
    pub algo: &'static str,
    pub method: &'static str,
    pub outcome: Outcome,
    pub witness: Option<Vec<EdgeId>>,
    pub witness_diameter: Option<Cost>,
    pub stats: Vec<(&'static str, u64)>,
    pub elapsed: Duration,
}

impl SolveReport {
    /// One-line machine summary. Wall time is left out so that identical
    /// inputs give identical output.
    pub fn json(&self) -> Value {
        let mut v = json!({
            "instance": {
                "n": self.n,
                "m": self.m,
                "colors": self.colors,
                "max_degree": self.max_degree,
                "class": self.class.name(),
            },
            "algo": self.algo,
            "method": self.method,
            "witness": self.witness,
            "witness_diameter": self.witness_diameter,
            "stats": self.stats.iter().map(|&(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        });
        match self.outcome {
            Outcome::Optimum(opt) => {
                v["mode"] = json!("optimize");
                v["opt"] = json!(opt);
            }
            Outcome::Decision { k, yes } => {
                v["mode"] = json!("decision");
                v["k"] = json!(k);
                v["answer"] = json!(if yes { "yes" } else { "no" });
            }
        }
        v
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "instance: n={} m={} colors={} max_degree={} class={}\nalgorithm: {} ({})\n",
            self.n,
            self.m,
            self.colors,
            self.max_degree,
            self.class.name(),
            self.algo,
            self.method
        );
        match self.outcome {
            Outcome::Optimum(opt) => out.push_str(&format!("optimum: {opt}\n")),
            Outcome::Decision { k, yes } => {
                out.push_str(&format!("diameter <= {k}: {}\n", if yes { "yes" } else { "no" }))
            }
        }
        if let Some(w) = &self.witness {
            let list: Vec<String> = w.iter().map(ToString::to_string).collect();
            out.push_str(&format!("witness edges: [{}]\n", list.join(", ")));
            if let Some(d) = self.witness_diameter {
                out.push_str(&format!("witness diameter: {d}\n"));
            }
        }
        for (k, v) in &self.stats {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}

/// Result of a concrete solver before reporting.
struct Run {
    algo: &'static str,
    method: &'static str,
    tree: Option<SpanningForest>,
    opt: Option<Cost>,
    stats: Vec<(&'static str, u64)>,
}

fn ctx(e: reload_core::Error) -> CliError {
    CliError::core("solve", e)
}

/// Cheapest tree among the `n` trees left by removing one edge of a cycle.
fn scan_cycle(inst: &Instance) -> Result<(Cost, SpanningForest), CliError> {
    let g = &inst.graph;
    let mut best: Option<(Cost, SpanningForest)> = None;
    for skip in 0..g.m() {
        let edges = (0..g.m()).filter(|&e| e != skip).collect();
        let tree = SpanningForest::spanning_tree(g, edges).map_err(ctx)?;
        let d = tree.diameter(inst).map_err(ctx)?;
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, tree));
        }
    }
    best.ok_or_else(|| CliError::Mismatch("cycle without edges".into()))
}

fn run_direct(inst: &Instance, decision: Option<Cost>, class: Class) -> Result<Run, CliError> {
    let (opt, tree, algo, method) = match class {
        Class::Forest => {
            let tree = SpanningForest::spanning_tree(&inst.graph, (0..inst.graph.m()).collect()).map_err(ctx)?;
            (tree.diameter(inst).map_err(ctx)?, tree, "forest", "own-diameter")
        }
        // A cycle is a cactus; the scan is the cactus family's shortcut for it.
        _ => {
            let (d, t) = scan_cycle(inst)?;
            (d, t, "cactus", "cycle-scan")
        }
    };
    let tree = match decision {
        Some(k) if opt > k => None,
        _ => Some(tree),
    };
    Ok(Run {
        algo,
        method,
        tree,
        opt: Some(opt),
        stats: vec![("trees_evaluated", inst.graph.m().max(1) as u64)],
    })
}

fn run_brute(inst: &Instance, decision: Option<Cost>, max_trees: u64) -> Result<Run, CliError> {
    match decision {
        Some(k) => Ok(Run {
            algo: "brute",
            method: "pruned-search",
            tree: decide_bruteforce(inst, k, max_trees).map_err(ctx)?,
            opt: None,
            stats: vec![],
        }),
        None => {
            let r = solve_bruteforce(inst, max_trees).map_err(ctx)?;
            Ok(Run {
                algo: "brute",
                method: "enumeration",
                tree: Some(r.witness),
                opt: Some(r.opt),
                stats: vec![("trees_enumerated", r.trees_enumerated)],
            })
        }
    }
}

fn run_cactus(inst: &Instance, decision: Option<Cost>) -> Result<Run, CliError> {
    let solver = CactusSolver::new(inst).map_err(|e| match e {
        reload_core::Error::NotACactus { .. } => CliError::Mismatch(format!("--algo cactus: {e}")),
        other => ctx(other),
    })?;
    let cycles = solver.block_tree().num_cycles() as u64;
    let blocks = solver.block_tree().blocks.len() as u64;
    let mut stats = vec![("blocks", blocks), ("cycles", cycles)];
    let (tree, opt) = match decision {
        Some(k) => (solver.decide(k).map_err(ctx)?, None),
        None => {
            let s = solver.solve().map_err(ctx)?;
            stats.push(("decisions", s.decisions as u64));
            (Some(s.witness), Some(s.opt))
        }
    };
    Ok(Run {
        algo: "cactus",
        method: "block-tree-2sat",
        tree,
        opt,
        stats,
    })
}

fn run_twdp(inst: &Instance, opts: &SolveOptions) -> Result<Run, CliError> {
    let td = match &opts.td {
        Some(td) => td.clone(),
        None => heuristic_decomposition(&inst.graph),
    };
    let cfg = FptConfig {
        table_cap: opts.table_cap,
        ..FptConfig::default()
    };
    let solver = FptSolver::new(inst, &td, cfg).map_err(ctx)?;
    let mut max_table = 0usize;
    let mut total = 0usize;
    let mut decide = |k: Cost| {
        let (t, s) = solver.decide_with_stats(k)?;
        max_table = max_table.max(s.max_table);
        total += s.total_entries;
        Ok(t)
    };
    let (tree, opt, decisions) = match opts.decision {
        Some(k) => (decide(k).map_err(ctx)?, None, 1),
        None => {
            let s = minimize_budget(inst.diameter_upper_bound(), decide).map_err(ctx)?;
            (Some(s.witness), Some(s.opt), s.decisions)
        }
    };
    Ok(Run {
        algo: "twdp",
        method: if opts.td.is_some() { "given-decomposition" } else { "min-fill-decomposition" },
        tree,
        opt,
        stats: vec![
            ("width", td.width() as u64),
            ("nice_nodes", solver.nice().nodes.len() as u64),
            ("decisions", decisions as u64),
            ("max_table", max_table as u64),
            ("total_entries", total as u64),
        ],
    })
}

/// Runs the selected algorithm and re-verifies its witness.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, CliError> {
    let g = &inst.graph;
    if !g.is_connected() {
        return Err(ctx(reload_core::Error::Disconnected));
    }
    let class = Class::of(inst);
    let start = Instant::now();
    let run = match opts.algo {
        Algo::Auto => match class {
            Class::Forest | Class::Cycle => run_direct(inst, opts.decision, class)?,
            Class::Cactus => run_cactus(inst, opts.decision)?,
            Class::General => run_twdp(inst, opts)?,
        },
        Algo::Brute => run_brute(inst, opts.decision, opts.max_trees)?,
        Algo::Cactus => run_cactus(inst, opts.decision)?,
        Algo::Twdp => run_twdp(inst, opts)?,
    };
    let elapsed = start.elapsed();

    let witness_diameter = run.tree.as_ref().map(|t| t.diameter(inst)).transpose().map_err(ctx)?;
    let outcome = match opts.decision {
        Some(k) => Outcome::Decision {
            k,
            yes: run.tree.is_some(),
        },
        None => Outcome::Optimum(run.opt.expect("optimization runs report an optimum")),
    };
    match (outcome, witness_diameter) {
        (Outcome::Optimum(opt), Some(d)) => assert_eq!(d, opt, "witness does not attain the optimum"),
        (Outcome::Decision { k, .. }, Some(d)) => assert!(d <= k, "witness exceeds the budget"),
        _ => {}
    }
    Ok(SolveReport {
        n: g.n(),
        m: g.m(),
        colors: inst.costs.num_colors(),
        max_degree: g.max_degree(),
        class,
        algo: run.algo,
        method: run.method,
        outcome,
        witness: run.tree.map(|t| t.edges().to_vec()),
        witness_diameter,
        stats: run.stats,
        elapsed,
    })
}
