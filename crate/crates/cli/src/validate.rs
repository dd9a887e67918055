//! Structural checks on instance and decomposition files.

use std::path::Path;

use reload_core::cactus::is_cactus;
use reload_core::decomposition::{parse_decomposition, validate_decomposition};
use reload_core::{check_triangle_inequality, parse_raw_instance};
use serde_json::{json, Value};

use crate::error::{read, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A reported property that is not required to hold.
    Info,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn info(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: Status::Info,
            detail: detail.into(),
        }
    }
}

pub fn validate(instance: &Path, td: Option<&Path>) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let raw = match parse_raw_instance(&read(instance)?) {
        Ok(raw) => {
            checks.push(Check::new("format", true, "well-formed"));
            raw
        }
        Err(e) => {
            checks.push(Check::new("format", false, e.to_string()));
            return Ok(checks);
        }
    };
    let k = raw.num_colors;
    let asym = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).find(|&(a, b)| raw.rows[a][b] != raw.rows[b][a]);
    checks.push(match asym {
        None => Check::new("symmetry", true, "cost matrix is symmetric"),
        Some((a, b)) => Check::new(
            "symmetry",
            false,
            format!("cost[{a}][{b}] = {} but cost[{b}][{a}] = {}", raw.rows[a][b], raw.rows[b][a]),
        ),
    });
    let g = raw.graph.clone();
    checks.push(Check::new(
        "connected",
        g.is_connected(),
        if g.is_connected() { "graph is connected" } else { "graph is disconnected" },
    ));
    checks.push(Check::info(
        "cactus",
        if is_cactus(&g) { "graph is a cactus" } else { "graph is not a cactus" },
    ));
    if asym.is_none() {
        match raw.into_instance() {
            Ok(inst) => {
                let holds = check_triangle_inequality(&inst.graph, &inst.costs);
                checks.push(Check::info(
                    "triangle",
                    if holds { "triangle inequality holds" } else { "triangle inequality violated" },
                ));
            }
            Err(e) => checks.push(Check::new("costs", false, e.to_string())),
        }
    }
    if let Some(path) = td {
        match parse_decomposition(&read(path)?) {
            Err(e) => checks.push(Check::new("decomposition", false, e.to_string())),
            Ok(td) => checks.push(match validate_decomposition(&g, &td) {
                Ok(()) => Check::new("decomposition", true, format!("valid, width {}", td.width())),
                Err(v) => Check::new("decomposition", false, v.to_string()),
            }),
        }
    }
    Ok(checks)
}

pub fn human(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            format!("{tag} {}: {}\n", c.name, c.detail)
        })
        .collect()
}

pub fn summary(checks: &[Check]) -> Value {
    let failed: Vec<&str> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name).collect();
    json!({
        "ok": failed.is_empty(),
        "failed": failed,
        "checks": checks.iter().map(|c| (c.name.to_string(), json!(c.detail))).collect::<serde_json::Map<_, _>>(),
    })
}
