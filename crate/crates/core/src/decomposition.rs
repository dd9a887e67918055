//! Tree decompositions: validation, a min-fill heuristic, and the PACE
//! `.td` text format.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_num};
use crate::graph::{ColoredGraph, Dsu, Vertex};

/// Bags indexed `0..num_bags` and the edges of the decomposition tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Sorts and deduplicates every bag.
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition::new(vec![(0..n).collect()], Vec::new())
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }
}

/// First axiom violation found by [`validate_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoBags,
    BagOutOfRange { bag: usize },
    VertexOutOfRange { bag: usize, vertex: Vertex },
    /// The decomposition's own graph has a cycle or is disconnected.
    NotATree,
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    /// The bags containing `vertex` do not induce a connected subtree;
    /// `bags` are two occurrences in different pieces.
    DisconnectedOccurrence { vertex: Vertex, bags: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoBags => write!(f, "decomposition has no bags"),
            Violation::BagOutOfRange { bag } => write!(f, "tree edge references missing bag {bag}"),
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} contains unknown vertex {vertex}")
            }
            Violation::NotATree => write!(f, "decomposition graph is not a tree"),
            Violation::VertexUncovered(v) => write!(f, "vertex coverage: vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => {
                write!(f, "edge coverage: no bag contains both ends of edge {{{u}, {v}}}")
            }
            Violation::DisconnectedOccurrence { vertex, bags } => write!(
                f,
                "connectivity: bags {} and {} both contain vertex {vertex} but are not joined through bags containing it",
                bags.0, bags.1
            ),
        }
    }
}

/// Checks vertex coverage, edge coverage and connectivity of occurrences.
pub fn validate_decomposition(graph: &ColoredGraph, td: &TreeDecomposition) -> Result<(), Violation> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(Violation::NoBags);
    }
    for &(a, b) in &td.edges {
        if a >= nb || b >= nb {
            return Err(Violation::BagOutOfRange { bag: a.max(b) });
        }
    }
    let mut dsu = Dsu::new(nb);
    for &(a, b) in &td.edges {
        if !dsu.union(a, b) {
            return Err(Violation::NotATree);
        }
    }
    if td.edges.len() + 1 != nb {
        return Err(Violation::NotATree);
    }
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); graph.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= graph.n() {
                return Err(Violation::VertexOutOfRange { bag: i, vertex: v });
            }
            occ[v].push(i);
        }
    }
    if let Some(v) = occ.iter().position(Vec::is_empty) {
        return Err(Violation::VertexUncovered(v));
    }
    let sets: Vec<BTreeSet<Vertex>> = td.bags.iter().map(|b| b.iter().copied().collect()).collect();
    for e in graph.edges() {
        if !occ[e.u].iter().any(|&i| sets[i].contains(&e.v)) {
            return Err(Violation::EdgeUncovered(e.u, e.v));
        }
    }
    for (v, bags) in occ.iter().enumerate() {
        let mut dsu = Dsu::new(nb);
        for &(a, b) in &td.edges {
            if sets[a].contains(&v) && sets[b].contains(&v) {
                dsu.union(a, b);
            }
        }
        let root = dsu.find(bags[0]);
        if let Some(&other) = bags.iter().find(|&&b| dsu.find(b) != root) {
            return Err(Violation::DisconnectedOccurrence {
                vertex: v,
                bags: (bags[0], other),
            });
        }
    }
    Ok(())
}

/// Decomposition from a min-fill elimination ordering, ties broken by the
/// lowest vertex id. Valid for any graph; no width guarantee.
pub fn heuristic_decomposition(graph: &ColoredGraph) -> TreeDecomposition {
    let n = graph.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut nbrs: Vec<BTreeSet<Vertex>> = (0..n)
        .map(|v| graph.adj(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut alive = vec![true; n];
    let mut position = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill_in(&nbrs, v), v))
            .expect("a vertex remains");
        let ns: Vec<Vertex> = nbrs[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
            nbrs[a].remove(&v);
        }
        alive[v] = false;
        position[v] = step;
        order.push(v);
        let mut bag = ns;
        bag.push(v);
        bags.push(bag);
    }
    // Bag of v attaches to the bag of its earliest-eliminated later neighbor.
    let mut edges = Vec::with_capacity(n - 1);
    for (step, bag) in bags.iter().enumerate() {
        let v = order[step];
        let parent = bag
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| position[w])
            .min();
        match parent {
            Some(p) => edges.push((step, p)),
            // Last vertex of a component: chain to the next bag.
            None if step + 1 < n => edges.push((step, step + 1)),
            None => {}
        }
    }
    TreeDecomposition::new(bags, edges)
}

fn fill_in(nbrs: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let ns: Vec<Vertex> = nbrs[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !nbrs[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Parses the PACE `.td` format. Bag ids and vertices are 1-based in the
/// file and 0-based in the returned value.
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = content_lines(text).filter(|(_, t)| t[0] != "c");
    let (hl, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing `s td` header".into()))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(perr(hl, "expected `s td <num_bags> <width+1> <n>`".into()));
    }
    let nb: usize = parse_num(hl, header[2], "bag count")?;
    let declared: usize = parse_num(hl, header[3], "bag size")?;
    let n: usize = parse_num(hl, header[4], "vertex count")?;
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; nb];
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks[0] == "b" {
            let id: usize = parse_num(ln, toks.get(1).copied().unwrap_or(""), "bag id")?;
            if id == 0 || id > nb {
                return Err(perr(ln, format!("bag id {id} out of range 1..={nb}")));
            }
            if bags[id - 1].is_some() {
                return Err(perr(ln, format!("bag {id} listed twice")));
            }
            let mut bag = Vec::with_capacity(toks.len() - 2);
            for t in &toks[2..] {
                let v: usize = parse_num(ln, t, "vertex")?;
                if v == 0 || v > n {
                    return Err(perr(ln, format!("vertex {v} out of range 1..={n}")));
                }
                bag.push(v - 1);
            }
            if bag.len() > declared {
                return Err(perr(ln, format!("bag {id} exceeds declared size {declared}")));
            }
            bags[id - 1] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(perr(ln, "expected `b <id> <v...>` or `<bag> <bag>`".into()));
            }
            let a: usize = parse_num(ln, toks[0], "bag id")?;
            let b: usize = parse_num(ln, toks[1], "bag id")?;
            if a == 0 || b == 0 || a > nb || b > nb {
                return Err(perr(ln, format!("tree edge {a} {b} out of range 1..={nb}")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(hl, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, edges))
}

pub fn serialize_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "s td {} {} {}", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}
