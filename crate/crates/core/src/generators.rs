//! Instance generators: the hardness constructions (from 3-SAT, Partition
//! and Unary Bin Packing) and seeded random graphs and cost tables.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_num};
use crate::graph::{ColoredGraph, Cost, Instance, ReloadCostTable, Vertex};
use crate::twosat::Lit;

/// CNF formula over variables `0..num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Self {
        CnfFormula { num_vars, clauses }
    }

    /// Builds a formula from DIMACS-style signed, 1-based literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Self {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&l| dimacs_lit(l)).collect())
            .collect();
        CnfFormula { num_vars, clauses }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// Number of occurrences of each variable, split by polarity.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.num_vars];
        for l in self.clauses.iter().flatten() {
            if l.positive {
                occ[l.var].0 += 1;
            } else {
                occ[l.var].1 += 1;
            }
        }
        occ
    }

    /// Every variable occurs exactly three times, with both polarities.
    pub fn has_three_occurrence_property(&self) -> bool {
        self.occurrences()
            .iter()
            .all(|&(p, n)| p + n == 3 && p >= 1 && n >= 1)
    }
}

fn dimacs_lit(l: i64) -> Lit {
    assert!(l != 0, "0 is not a literal");
    let var = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        Lit::pos(var)
    } else {
        Lit::neg(var)
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut num_vars = None;
    let mut expected = 0usize;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 1;
    for (ln, toks) in content_lines(text) {
        last_line = ln;
        if toks[0] == "c" || toks[0] == "%" {
            continue;
        }
        if toks[0] == "p" {
            if num_vars.is_some() || toks.len() != 4 || toks[1] != "cnf" {
                return Err(perr(ln, "expected a single `p cnf <vars> <clauses>` header".into()));
            }
            num_vars = Some(parse_num::<usize>(ln, toks[2], "variable count")?);
            expected = parse_num(ln, toks[3], "clause count")?;
            continue;
        }
        let nv = num_vars.ok_or_else(|| perr(ln, "clause before `p cnf` header".into()))?;
        for t in toks {
            let l: i64 = parse_num(ln, t, "literal")?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if l.unsigned_abs() as usize > nv {
                return Err(perr(ln, format!("literal {l} exceeds {nv} variables")));
            }
            current.push(dimacs_lit(l));
        }
    }
    let num_vars = num_vars.ok_or_else(|| perr(1, "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != expected {
        return Err(perr(
            last_line,
            format!("header declares {expected} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn serialize_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let v = l.var as i64 + 1;
            let _ = write!(out, "{} ", if l.positive { v } else { -v });
        }
        out.push_str("0\n");
    }
    out
}

/// The 3-SAT construction on an outerplanar graph: a hub `r` plus a
/// three-vertex fan per clause, one color per edge, budget 9.
///
/// Vertex 0 is `r`; clause `j` owns vertices `1 + 3j .. 4 + 3j`.
pub fn gen_outerplanar_from_3sat(f: &CnfFormula) -> Result<Instance> {
    for (j, c) in f.clauses.iter().enumerate() {
        if c.len() != 3 {
            return Err(Error::Precondition(format!(
                "clause {} has {} literals, expected 3",
                j + 1,
                c.len()
            )));
        }
        for (a, la) in c.iter().enumerate() {
            if c[a + 1..].contains(&la.negate()) {
                return Err(Error::Precondition(format!(
                    "clause {} contains a literal and its negation",
                    j + 1
                )));
            }
        }
    }
    let m = f.clauses.len();
    let mut g = ColoredGraph::new(1 + 3 * m);
    // Literal carried by each hub edge, indexed by color.
    let mut hub: Vec<Option<Lit>> = Vec::with_capacity(5 * m);
    for (j, c) in f.clauses.iter().enumerate() {
        let v = |i: usize| 1 + 3 * j + i;
        for (i, &l) in c.iter().enumerate() {
            g.add_edge(0, v(i), hub.len())?;
            hub.push(Some(l));
        }
        g.add_edge(v(0), v(1), hub.len())?;
        hub.push(None);
        g.add_edge(v(1), v(2), hub.len())?;
        hub.push(None);
    }
    let mut costs = ReloadCostTable::new(hub.len());
    for a in 0..hub.len() {
        for b in a + 1..hub.len() {
            let c = match (hub[a], hub[b]) {
                (Some(x), Some(y)) if x == y.negate() => 10,
                (Some(_), Some(_)) => 5,
                _ => 1,
            };
            costs.set(a, b, c);
        }
    }
    Instance::new(g, costs, Some(9))
}

/// Rewrites a formula with clauses of size 2 or 3, where each variable
/// occurs at most three times, into an equisatisfiable one in which every
/// variable occurs exactly three times with both polarities.
///
/// Variables that occur with one polarity only are fixed and dropped with
/// their clauses; a variable occurring twice gains a fresh partner `y`
/// through the clauses `(x or y)` and `(y or not y)`. Variables are
/// renumbered densely in order of first appearance.
pub fn normalize_3sat_three_occurrences(f: &CnfFormula) -> Result<CnfFormula> {
    for (j, c) in f.clauses.iter().enumerate() {
        if c.len() < 2 || c.len() > 3 {
            return Err(Error::Precondition(format!(
                "clause {} has {} literals, expected 2 or 3",
                j + 1,
                c.len()
            )));
        }
    }
    for (v, &(p, n)) in f.occurrences().iter().enumerate() {
        if p + n > 3 {
            return Err(Error::Precondition(format!(
                "variable x{} occurs {} times, at most 3 allowed",
                v + 1,
                p + n
            )));
        }
    }
    let mut clauses = f.clauses.clone();
    loop {
        let g = CnfFormula::new(f.num_vars, clauses.clone());
        let occ = g.occurrences();
        let one_sided: Vec<usize> = (0..f.num_vars)
            .filter(|&v| (occ[v].0 == 0) != (occ[v].1 == 0))
            .collect();
        if one_sided.is_empty() {
            break;
        }
        clauses.retain(|c| !c.iter().any(|l| one_sided.contains(&l.var)));
    }
    let mut rename = vec![None; f.num_vars];
    let mut next = 0;
    for l in clauses.iter_mut().flatten() {
        let id = *rename[l.var].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        l.var = id;
    }
    let mut out = CnfFormula::new(next, clauses);
    for (v, (p, n)) in out.occurrences().into_iter().enumerate() {
        if p + n == 2 {
            let y = out.num_vars;
            out.num_vars += 1;
            out.clauses.push(vec![Lit::pos(v), Lit::pos(y)]);
            out.clauses.push(vec![Lit::pos(y), Lit::neg(y)]);
        }
    }
    debug_assert!(out.has_three_occurrence_property());
    Ok(out)
}

/// Vertex ids used by [`gen_degree3_from_3sat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree3Layout {
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl Degree3Layout {
    pub fn u(&self, i: usize) -> Vertex {
        5 * i
    }
    pub fn v(&self, i: usize) -> Vertex {
        5 * i + 1
    }
    pub fn p(&self, i: usize) -> Vertex {
        5 * i + 2
    }
    pub fn r(&self, i: usize) -> Vertex {
        5 * i + 3
    }
    pub fn n(&self, i: usize) -> Vertex {
        5 * i + 4
    }
    pub fn clause(&self, j: usize) -> Vertex {
        5 * self.num_vars + j
    }
}

/// Colors of the degree-3 construction, 0-based (the constructions's
/// colors 1..=9 become 0..=8).
pub mod deg3_colors {
    pub const PR: usize = 0;
    pub const RN: usize = 1;
    pub const SPINE: usize = 2;
    pub const POSITIVE: [usize; 3] = [3, 4, 5];
    pub const NEGATIVE: [usize; 3] = [6, 7, 8];
}

/// The degree-3 construction with costs in {0, 1} and budget 0. Requires
/// every variable to occur exactly three times with both polarities.
pub fn gen_degree3_from_3sat(f: &CnfFormula) -> Result<Instance> {
    use deg3_colors::*;
    for (v, &(p, n)) in f.occurrences().iter().enumerate() {
        if p + n != 3 || p == 0 || n == 0 {
            return Err(Error::Precondition(format!(
                "variable x{} occurs {p} times positively and {n} times negatively",
                v + 1
            )));
        }
    }
    if f.num_vars == 0 {
        return Err(Error::Precondition("formula has no variables".into()));
    }
    let lay = Degree3Layout {
        num_vars: f.num_vars,
        num_clauses: f.clauses.len(),
    };
    let mut g = ColoredGraph::new(5 * f.num_vars + f.clauses.len());
    for i in 0..f.num_vars {
        g.add_edge(lay.u(i), lay.v(i), SPINE)?;
        g.add_edge(lay.v(i), lay.p(i), SPINE)?;
        g.add_edge(lay.p(i), lay.r(i), PR)?;
        g.add_edge(lay.r(i), lay.n(i), RN)?;
        g.add_edge(lay.n(i), lay.v(i), SPINE)?;
        if i + 1 < f.num_vars {
            g.add_edge(lay.u(i), lay.u(i + 1), SPINE)?;
        }
    }
    let mut used_p = vec![false; f.num_vars];
    let mut used_n = vec![false; f.num_vars];
    for (j, c) in f.clauses.iter().enumerate() {
        let mut taken = Vec::new();
        for &l in c {
            let i = l.var;
            let end = if l.positive && !used_p[i] {
                used_p[i] = true;
                lay.p(i)
            } else if !l.positive && !used_n[i] {
                used_n[i] = true;
                lay.n(i)
            } else {
                lay.r(i)
            };
            let palette = if l.positive { POSITIVE } else { NEGATIVE };
            let color = *palette
                .iter()
                .find(|c| !taken.contains(*c))
                .expect("at most three edges per clause vertex");
            taken.push(color);
            g.add_edge(lay.clause(j), end, color)?;
        }
    }
    let mut costs = ReloadCostTable::new(9);
    costs.set(PR, RN, 1);
    for c in POSITIVE {
        costs.set(PR, c, 1);
    }
    for c in NEGATIVE {
        costs.set(RN, c, 1);
    }
    for a in 3..9 {
        for b in a + 1..9 {
            costs.set(a, b, 1);
        }
    }
    Instance::new(g, costs, Some(0))
}

/// Source instance for the Partition construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    pub items: Vec<Cost>,
}

impl PartitionInstance {
    pub fn new(items: Vec<Cost>) -> Result<Self> {
        if items.is_empty() || items.contains(&0) {
            return Err(Error::Precondition("partition needs at least one item, all positive".into()));
        }
        Ok(PartitionInstance { items })
    }

    pub fn total(&self) -> Cost {
        self.items.iter().sum()
    }
}

/// Source instance for the Unary Bin Packing construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinPackingInstance {
    pub items: Vec<Cost>,
    pub capacity: Cost,
    pub bins: usize,
}

impl BinPackingInstance {
    pub fn new(items: Vec<Cost>, capacity: Cost, bins: usize) -> Result<Self> {
        if items.is_empty() || items.contains(&0) {
            return Err(Error::Precondition("bin packing needs at least one item, all positive".into()));
        }
        if bins < 2 {
            return Err(Error::Precondition(format!("bin count {bins} is below 2")));
        }
        Ok(BinPackingInstance {
            items,
            capacity,
            bins,
        })
    }
}

/// Builds a graph whose colors are edge ids and whose cost between two
/// adjacent edges is decided by `cost(e1, e2, shared_vertex)`.
fn distinct_color_instance(
    n: usize,
    edges: &[(Vertex, Vertex)],
    budget: Cost,
    cost: impl Fn(usize, usize, Vertex) -> Cost,
) -> Result<Instance> {
    let g = ColoredGraph::from_edges(n, edges.iter().enumerate().map(|(i, &(u, v))| (u, v, i)))?;
    let mut t = ReloadCostTable::new(edges.len());
    for x in 0..n {
        let inc: Vec<usize> = g.adj(x).iter().map(|&(_, e)| e).collect();
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                t.set(a, b, cost(a, b, x));
            }
        }
    }
    Instance::new(g, t, Some(budget))
}

/// The Partition construction: two mirrored copies of a ladder of
/// six-vertex gadgets, roots joined by a bridge, budget `B = sum(items)`.
///
/// Copy `c` uses vertices `c * (6n + 1) ..`; its root comes first and
/// gadget `i` occupies the next six ids as `u, u', m, m', d, d'`.
pub fn gen_planar_from_partition(p: &PartitionInstance) -> Result<Instance> {
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        Free,
        Root,
        Bridge,
        Middle(usize),
        Other,
    }
    let n = p.items.len();
    let b = p.total();
    let size = 6 * n + 1;
    let mut edges = Vec::new();
    let mut kinds = Vec::new();
    let mut push = |e: (Vertex, Vertex), k: Kind, edges: &mut Vec<_>| {
        edges.push(e);
        kinds.push(k);
    };
    let mut m_vertex = vec![0; 2 * size];
    let mut m_prime = vec![false; 2 * size];
    for copy in 0..2 {
        let base = copy * size;
        let r = base;
        let gv = |i: usize, off: usize| base + 1 + 6 * i + off;
        let (u, up, m, mp, d, dp) = (0, 1, 2, 3, 4, 5);
        push((r, gv(0, u)), Kind::Root, &mut edges);
        push((r, gv(0, d)), Kind::Root, &mut edges);
        for i in 0..n {
            m_vertex[gv(i, m)] = i;
            m_prime[gv(i, mp)] = true;
            push((gv(i, u), gv(i, up)), Kind::Other, &mut edges);
            push((gv(i, m), gv(i, mp)), Kind::Middle(i), &mut edges);
            push((gv(i, d), gv(i, dp)), Kind::Other, &mut edges);
            push((gv(i, u), gv(i, m)), Kind::Other, &mut edges);
            push((gv(i, up), gv(i, mp)), Kind::Other, &mut edges);
            push((gv(i, m), gv(i, d)), Kind::Other, &mut edges);
            push((gv(i, mp), gv(i, dp)), Kind::Other, &mut edges);
            if i + 1 < n {
                push((gv(i, up), gv(i + 1, u)), Kind::Free, &mut edges);
                push((gv(i, dp), gv(i + 1, d)), Kind::Free, &mut edges);
            }
        }
    }
    push((0, size), Kind::Bridge, &mut edges);
    let kinds_ref = &kinds;
    distinct_color_instance(2 * size, &edges, b, |e1, e2, x| {
        let (k1, k2) = (kinds_ref[e1], kinds_ref[e2]);
        let zero = |k: Kind| matches!(k, Kind::Free | Kind::Root | Kind::Bridge);
        if zero(k1) || zero(k2) {
            return 0;
        }
        match (k1, k2) {
            (Kind::Middle(i), _) | (_, Kind::Middle(i)) => {
                if m_prime[x] {
                    0
                } else {
                    debug_assert_eq!(m_vertex[x], i);
                    p.items[i]
                }
            }
            _ => b + 1,
        }
    })
}

/// Vertex ids used by [`gen_from_unary_binpacking`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinPackingLayout {
    pub items: usize,
    pub bins: usize,
}

impl BinPackingLayout {
    pub const ROOT: Vertex = 0;

    fn copy_base(&self, copy: usize) -> Vertex {
        1 + copy * self.items * (2 * self.bins + 1)
    }
    pub fn v(&self, copy: usize, i: usize) -> Vertex {
        self.copy_base(copy) + i * (2 * self.bins + 1)
    }
    pub fn l(&self, copy: usize, i: usize, j: usize) -> Vertex {
        self.v(copy, i) + 1 + j
    }
    pub fn r(&self, copy: usize, i: usize, j: usize) -> Vertex {
        self.v(copy, i) + 1 + self.bins + j
    }
    pub fn num_vertices(&self) -> usize {
        1 + 2 * self.items * (2 * self.bins + 1)
    }
}

/// The Unary Bin Packing construction: two copies of a `k`-lane ladder
/// over the items sharing a root, budget `2B`.
pub fn gen_from_unary_binpacking(p: &BinPackingInstance) -> Result<Instance> {
    let lay = BinPackingLayout {
        items: p.items.len(),
        bins: p.bins,
    };
    let (n, k) = (lay.items, lay.bins);
    let mut edges = Vec::new();
    // For edges at an item vertex: (item, lane, is_l_side).
    let mut at_item: Vec<Option<(usize, usize, bool)>> = Vec::new();
    for copy in 0..2 {
        for j in 0..k {
            edges.push((BinPackingLayout::ROOT, lay.l(copy, 0, j)));
            at_item.push(None);
        }
        for i in 0..n {
            for j in 0..k {
                edges.push((lay.v(copy, i), lay.l(copy, i, j)));
                at_item.push(Some((i, j, true)));
                edges.push((lay.v(copy, i), lay.r(copy, i, j)));
                at_item.push(Some((i, j, false)));
                edges.push((lay.l(copy, i, j), lay.r(copy, i, j)));
                at_item.push(None);
                if i + 1 < n {
                    edges.push((lay.r(copy, i, j), lay.l(copy, i + 1, j)));
                    at_item.push(None);
                }
            }
        }
    }
    let cap = p.capacity;
    let budget = 2 * cap;
    let items = &p.items;
    let at = &at_item;
    distinct_color_instance(lay.num_vertices(), &edges, budget, |e1, e2, _| {
        match (at[e1], at[e2]) {
            (Some((i1, j1, s1)), Some((i2, j2, s2))) if i1 == i2 => {
                if j1 == j2 && s1 != s2 {
                    items[i1]
                } else {
                    2 * cap + 1
                }
            }
            _ => 0,
        }
    })
}

/// Parses `p part <n>` followed by `n` positive integers.
pub fn parse_partition(text: &str) -> Result<PartitionInstance> {
    let (_, header, nums) = header_and_numbers(text, "part", 1)?;
    let n = header[0] as usize;
    let (ln, items) = nums;
    if items.len() != n {
        return Err(Error::Parse {
            line: ln,
            message: format!("header declares {n} items, found {}", items.len()),
        });
    }
    PartitionInstance::new(items).map_err(|e| Error::Parse {
        line: ln,
        message: e.to_string(),
    })
}

/// Parses `p ubp <n> <B> <k>` followed by `n` positive integers.
pub fn parse_binpacking(text: &str) -> Result<BinPackingInstance> {
    let (_, header, nums) = header_and_numbers(text, "ubp", 3)?;
    let (ln, items) = nums;
    let n = header[0] as usize;
    if items.len() != n {
        return Err(Error::Parse {
            line: ln,
            message: format!("header declares {n} items, found {}", items.len()),
        });
    }
    BinPackingInstance::new(items, header[1], header[2] as usize).map_err(|e| Error::Parse {
        line: ln,
        message: e.to_string(),
    })
}

type HeaderAndNumbers = (usize, Vec<u64>, (usize, Vec<u64>));

fn header_and_numbers(text: &str, kind: &str, fields: usize) -> Result<HeaderAndNumbers> {
    let mut lines = content_lines(text);
    let (hl, toks) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("missing `p {kind}` header"),
    })?;
    if toks.len() != 2 + fields || toks[0] != "p" || toks[1] != kind {
        return Err(Error::Parse {
            line: hl,
            message: format!("expected `p {kind}` header with {fields} fields"),
        });
    }
    let header = toks[2..]
        .iter()
        .map(|t| parse_num(hl, t, "header field"))
        .collect::<Result<Vec<u64>>>()?;
    let mut nums = Vec::new();
    let mut last = hl;
    for (ln, toks) in lines {
        last = ln;
        for t in toks {
            nums.push(parse_num(ln, t, "integer")?);
        }
    }
    Ok((hl, header, (last, nums)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected cactus on `n` vertices. Each step hangs either a cycle
/// (with probability `cycle_prob`, length 3 to 6 as room allows) or a
/// pendant edge off a uniformly chosen existing vertex. Edge colors are
/// uniform in `0..num_colors`.
pub fn gen_random_cactus(n: usize, cycle_prob: f64, num_colors: usize, seed: u64) -> ColoredGraph {
    assert!(num_colors >= 1 || n <= 1, "edges need at least one color");
    let mut rng = rng(seed);
    let mut g = ColoredGraph::new(n);
    let mut next = 1;
    while next < n {
        let at = rng.gen_range(0..next);
        let room = n - next;
        if room >= 2 && rng.gen_bool(cycle_prob) {
            let len = rng.gen_range(3..=(room + 1).min(6));
            let mut prev = at;
            for _ in 1..len {
                let c = rng.gen_range(0..num_colors);
                g.add_edge(prev, next, c).expect("fresh vertex");
                prev = next;
                next += 1;
            }
            let c = rng.gen_range(0..num_colors);
            g.add_edge(prev, at, c).expect("closing edge is new");
        } else {
            let c = rng.gen_range(0..num_colors);
            g.add_edge(at, next, c).expect("fresh vertex");
            next += 1;
        }
    }
    g
}

/// Random symmetric table with zero diagonal and off-diagonal entries
/// uniform in `0..=max_cost`.
pub fn gen_random_costs(num_colors: usize, max_cost: Cost, seed: u64) -> ReloadCostTable {
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut t = ReloadCostTable::new(num_colors);
    for a in 0..num_colors {
        for b in a + 1..num_colors {
            t.set(a, b, rng.gen_range(0..=max_cost));
        }
    }
    t
}

/// Random connected graph: a random spanning tree, then extra random edges
/// until `m` edges exist or no pair respecting `max_degree` remains.
pub fn gen_random_connected(n: usize, m: usize, max_degree: usize, num_colors: usize, seed: u64) -> ColoredGraph {
    assert!(max_degree >= 2 || n <= 2, "a connected graph needs degree 2");
    let mut rng = rng(seed);
    let mut g = ColoredGraph::new(n);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    for i in 1..n {
        let open: Vec<Vertex> = perm[..i]
            .iter()
            .copied()
            .filter(|&w| g.degree(w) < max_degree)
            .collect();
        let w = *open.choose(&mut rng).expect("a tree with degree >= 2 can always grow");
        g.add_edge(w, perm[i], rng.gen_range(0..num_colors)).expect("fresh vertex");
    }
    let mut candidates: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| g.find_edge(a, b).is_none())
        .collect();
    candidates.shuffle(&mut rng);
    for (a, b) in candidates {
        if g.m() >= m {
            break;
        }
        if g.degree(a) < max_degree && g.degree(b) < max_degree {
            g.add_edge(a, b, rng.gen_range(0..num_colors)).expect("new pair");
        }
    }
    g
}

/// Random CNF with clause sizes drawn from `sizes` and no clause holding a
/// literal together with its negation or a repeated variable.
pub fn gen_random_cnf(num_vars: usize, num_clauses: usize, sizes: &[usize], seed: u64) -> CnfFormula {
    let mut rng = rng(seed);
    let clauses = (0..num_clauses)
        .map(|_| {
            let len = *sizes.choose(&mut rng).expect("nonempty size list");
            let mut vars: Vec<usize> = (0..num_vars).collect();
            vars.shuffle(&mut rng);
            vars.truncate(len.min(num_vars));
            vars.into_iter()
                .map(|v| Lit {
                    var: v,
                    positive: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}
