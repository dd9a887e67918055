//! Line-oriented instance text format.
//!
//! ```text
//! rct <n> <m> <num_colors>
//! e <u> <v> <color>          (m lines)
//! c <row>                    (num_colors lines, full symmetric matrix)
//! k <budget>                 (optional)
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Cost, Instance, ReloadCostTable};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

/// Instance text parsed for syntax only: cost rows are not yet checked for
/// symmetry and edge colors not yet checked against the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub graph: ColoredGraph,
    pub num_colors: usize,
    pub rows: Vec<Vec<Cost>>,
    pub budget: Option<Cost>,
    header_line: usize,
    row_lines: Vec<usize>,
}

impl RawInstance {
    /// Builds the cost table and instance, reporting failures against the
    /// offending line.
    pub fn into_instance(self) -> Result<Instance> {
        let costs = ReloadCostTable::from_rows(&self.rows).map_err(|e| match e {
            Error::AsymmetricCosts(a, b) => perr(self.row_lines[a.max(b)], e.to_string()),
            other => perr(self.header_line, other.to_string()),
        })?;
        Instance::new(self.graph, costs, self.budget).map_err(|e| perr(self.header_line, e.to_string()))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_raw_instance(text)?.into_instance()
}

pub fn parse_raw_instance(text: &str) -> Result<RawInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing `rct` header"))?;
    if header[0] != "rct" || header.len() != 4 {
        return Err(perr(hl, "expected `rct <n> <m> <num_colors>`"));
    }
    let n: usize = parse_num(hl, header[1], "vertex count")?;
    let m: usize = parse_num(hl, header[2], "edge count")?;
    let k: usize = parse_num(hl, header[3], "color count")?;

    let mut graph = ColoredGraph::new(n);
    for idx in 0..m {
        let (ln, toks) = lines
            .next()
            .ok_or_else(|| perr(hl, format!("expected {m} edge lines, found {idx}")))?;
        if toks[0] != "e" || toks.len() != 4 {
            return Err(perr(ln, "expected `e <u> <v> <color>`"));
        }
        let u: usize = parse_num(ln, toks[1], "vertex")?;
        let v: usize = parse_num(ln, toks[2], "vertex")?;
        let c: usize = parse_num(ln, toks[3], "color")?;
        if c >= k {
            return Err(perr(ln, format!("color {c} out of range ({k} colors)")));
        }
        graph.add_edge(u, v, c).map_err(|e| perr(ln, e.to_string()))?;
    }

    let mut rows = Vec::with_capacity(k);
    let mut row_lines = Vec::with_capacity(k);
    for idx in 0..k {
        let (ln, toks) = lines
            .next()
            .ok_or_else(|| perr(hl, format!("expected {k} cost rows, found {idx}")))?;
        if toks[0] != "c" {
            return Err(perr(ln, "expected `c <row>`"));
        }
        if toks.len() - 1 != k {
            return Err(perr(ln, format!("cost row has {} entries, expected {k}", toks.len() - 1)));
        }
        let row = toks[1..]
            .iter()
            .map(|t| parse_num::<Cost>(ln, t, "cost"))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        row_lines.push(ln);
    }

    let mut budget = None;
    if let Some((ln, toks)) = lines.next() {
        if toks[0] != "k" || toks.len() != 2 {
            return Err(perr(ln, "expected `k <budget>` or end of input"));
        }
        budget = Some(parse_num(ln, toks[1], "budget")?);
        if let Some((extra, _)) = lines.next() {
            return Err(perr(extra, "trailing content after budget"));
        }
    }
    Ok(RawInstance {
        graph,
        num_colors: k,
        rows,
        budget,
        header_line: hl,
        row_lines,
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let k = inst.costs.num_colors();
    let mut out = String::new();
    let _ = writeln!(out, "rct {} {} {}", g.n(), g.m(), k);
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.color);
    }
    for a in 0..k {
        out.push('c');
        for &x in inst.costs.row(a) {
            let _ = write!(out, " {x}");
        }
        out.push('\n');
    }
    if let Some(b) = inst.budget {
        let _ = writeln!(out, "k {b}");
    }
    out
}
