//! Edge-colored graphs, symmetric reload-cost tables and reload-cost
//! evaluation of paths and trees.
//!
//! The reload cost of a path is charged at its interior vertices only: a
//! path `e_1, ..., e_l` costs `sum_{i>=2} c(chi(e_{i-1}), chi(e_i))`, so a
//! path with at most one edge costs nothing.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Color = usize;
pub type Cost = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

impl Edge {
    /// The endpoint of this edge that is not `w`.
    #[inline]
    pub fn other(&self, w: Vertex) -> Vertex {
        if self.u == w {
            self.v
        } else {
            debug_assert_eq!(self.v, w);
            self.u
        }
    }

    #[inline]
    pub fn touches(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }
}

/// Simple undirected graph with one color per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Color)>,
    {
        let mut g = ColoredGraph::new(n);
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}` with the given color and returns its edge id.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.index.contains_key(&key(u, v)) {
            return Err(Error::DuplicateEdge(u, v));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, color });
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        self.index.insert(key(u, v), id);
        Ok(id)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Neighbors of `v` together with the connecting edge ids.
    #[inline]
    pub fn adj(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&key(u, v)).copied()
    }

    /// One more than the largest color used, or 0 for an edgeless graph.
    pub fn color_bound(&self) -> usize {
        self.edges.iter().map(|e| e.color + 1).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Whether the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        let mut dsu = Dsu::new(self.n);
        self.edges.iter().all(|e| dsu.union(e.u, e.v))
    }
}

/// Dense symmetric reload-cost matrix over colors `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReloadCostTable {
    num_colors: usize,
    cost: Vec<Cost>,
}

impl ReloadCostTable {
    /// All-zero table.
    pub fn new(num_colors: usize) -> Self {
        ReloadCostTable {
            num_colors,
            cost: vec![0; num_colors * num_colors],
        }
    }

    /// Builds a table from full rows, rejecting asymmetric input.
    pub fn from_rows(rows: &[Vec<Cost>]) -> Result<Self> {
        let k = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::RaggedCostTable {
                    row: i,
                    got: row.len(),
                    expected: k,
                });
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                if rows[a][b] != rows[b][a] {
                    return Err(Error::AsymmetricCosts(a, b));
                }
            }
        }
        Ok(ReloadCostTable {
            num_colors: k,
            cost: rows.iter().flatten().copied().collect(),
        })
    }

    #[inline]
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    #[inline]
    pub fn get(&self, a: Color, b: Color) -> Cost {
        self.cost[a * self.num_colors + b]
    }

    /// Sets both `(a, b)` and `(b, a)`.
    pub fn set(&mut self, a: Color, b: Color, c: Cost) {
        self.cost[a * self.num_colors + b] = c;
        self.cost[b * self.num_colors + a] = c;
    }

    pub fn max_entry(&self) -> Cost {
        self.cost.iter().copied().max().unwrap_or(0)
    }

    pub fn row(&self, a: Color) -> &[Cost] {
        &self.cost[a * self.num_colors..(a + 1) * self.num_colors]
    }

    /// Multiplies every entry by `s`.
    pub fn scaled(&self, s: Cost) -> Result<Self> {
        let cost = self
            .cost
            .iter()
            .map(|&c| c.checked_mul(s).ok_or(Error::CostOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReloadCostTable {
            num_colors: self.num_colors,
            cost,
        })
    }
}

/// A graph, its reload costs and an optional decision budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: ColoredGraph,
    pub costs: ReloadCostTable,
    pub budget: Option<Cost>,
}

impl Instance {
    /// Pairs a graph with a cost table.
    ///
    /// Rejects edges whose color has no row in the table and tables whose
    /// entries could overflow when summed along a path of `n` edges.
    pub fn new(graph: ColoredGraph, costs: ReloadCostTable, budget: Option<Cost>) -> Result<Self> {
        for (id, e) in graph.edges().iter().enumerate() {
            if e.color >= costs.num_colors() {
                return Err(Error::ColorOutOfRange {
                    edge: id,
                    color: e.color,
                    num_colors: costs.num_colors(),
                });
            }
        }
        // Sums of up to n entries, plus headroom for doubling searches.
        let n = graph.n().max(1) as u64;
        costs
            .max_entry()
            .checked_mul(4 * n)
            .ok_or(Error::CostOverflow)?;
        Ok(Instance {
            graph,
            costs,
            budget,
        })
    }

    /// Reload cost of traversing `e1` then `e2` through their shared vertex.
    #[inline]
    pub fn reload(&self, e1: EdgeId, e2: EdgeId) -> Cost {
        self.costs
            .get(self.graph.edge(e1).color, self.graph.edge(e2).color)
    }

    pub fn with_budget(mut self, k: Option<Cost>) -> Self {
        self.budget = k;
        self
    }

    /// A bound no spanning tree diameter can exceed.
    pub fn diameter_upper_bound(&self) -> Cost {
        (self.graph.n().saturating_sub(2) as u64) * self.costs.max_entry()
    }
}

/// Reload cost of a simple path given as a vertex sequence.
pub fn path_reload_cost(graph: &ColoredGraph, costs: &ReloadCostTable, path: &[Vertex]) -> Result<Cost> {
    let mut seen = std::collections::HashSet::new();
    for &v in path {
        if v >= graph.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: graph.n() });
        }
        if !seen.insert(v) {
            return Err(Error::InvalidPath(format!("vertex {v} repeats")));
        }
    }
    let mut edges = Vec::with_capacity(path.len().saturating_sub(1));
    for w in path.windows(2) {
        match graph.find_edge(w[0], w[1]) {
            Some(id) => edges.push(id),
            None => {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )))
            }
        }
    }
    let mut total: Cost = 0;
    for w in edges.windows(2) {
        let c = costs.get(graph.edge(w[0]).color, graph.edge(w[1]).color);
        total = total.checked_add(c).ok_or(Error::CostOverflow)?;
    }
    Ok(total)
}

/// Reload-cost triangle inequality at every vertex:
/// `c(e1, e3) <= c(e1, e2) + c(e2, e3)` for distinct edges sharing a vertex.
pub fn check_triangle_inequality(graph: &ColoredGraph, costs: &ReloadCostTable) -> bool {
    for v in 0..graph.n() {
        let cols: Vec<Color> = graph.adj(v).iter().map(|&(_, e)| graph.edge(e).color).collect();
        for (i, &a) in cols.iter().enumerate() {
            for (j, &b) in cols.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (l, &m) in cols.iter().enumerate() {
                    if l == i || l == j {
                        continue;
                    }
                    if costs.get(a, m) > costs.get(a, b) + costs.get(b, m) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// An acyclic edge subset of a graph.
///
/// Holds edge ids only; every query takes the owning [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningForest {
    n: usize,
    edges: Vec<EdgeId>,
}

impl SpanningForest {
    /// Validates that `edges` is acyclic in `graph`.
    pub fn new(graph: &ColoredGraph, mut edges: Vec<EdgeId>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut dsu = Dsu::new(graph.n());
        for &id in &edges {
            if id >= graph.m() {
                return Err(Error::NotATree(format!("edge id {id} out of range")));
            }
            let e = graph.edge(id);
            if !dsu.union(e.u, e.v) {
                return Err(Error::NotATree(format!("edge {{{}, {}}} closes a cycle", e.u, e.v)));
            }
        }
        Ok(SpanningForest { n: graph.n(), edges })
    }

    /// Validates that `edges` is a spanning tree of `graph`.
    pub fn spanning_tree(graph: &ColoredGraph, edges: Vec<EdgeId>) -> Result<Self> {
        let f = SpanningForest::new(graph, edges)?;
        if !f.is_spanning_tree() {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                f.edges.len(),
                f.n
            )));
        }
        Ok(f)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.edges.len() + 1 == self.n || (self.n == 0 && self.edges.is_empty())
    }

    /// Component label per vertex.
    pub fn components(&self, graph: &ColoredGraph) -> Vec<usize> {
        let mut dsu = Dsu::new(self.n);
        for &id in &self.edges {
            let e = graph.edge(id);
            dsu.union(e.u, e.v);
        }
        (0..self.n).map(|v| dsu.find(v)).collect()
    }

    fn view<'a>(&self, inst: &'a Instance) -> ForestView<'a> {
        ForestView::new(inst, &self.edges)
    }

    /// Reload cost of the unique `u`-`v` path, or `None` across components.
    pub fn reload_distance(&self, inst: &Instance, u: Vertex, v: Vertex) -> Option<Cost> {
        self.view(inst).distances_from(u)[v]
    }

    /// Largest reload distance from `v` within its component.
    pub fn eccentricity(&self, inst: &Instance, v: Vertex) -> Cost {
        self.view(inst).eccentricity(v)
    }

    /// Reload diameter; fails unless the forest is a single spanning tree.
    pub fn diameter(&self, inst: &Instance) -> Result<Cost> {
        if !self.is_spanning_tree() {
            return Err(Error::NotATree(format!(
                "forest has {} components",
                self.n - self.edges.len()
            )));
        }
        Ok(self.view(inst).diameter())
    }
}

impl fmt::Display for SpanningForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", ids.join(" "))
    }
}

pub fn tree_diameter(tree: &SpanningForest, inst: &Instance) -> Result<Cost> {
    tree.diameter(inst)
}

pub fn reload_distance(tree: &SpanningForest, inst: &Instance, u: Vertex, v: Vertex) -> Option<Cost> {
    tree.reload_distance(inst, u, v)
}

pub fn eccentricity(tree: &SpanningForest, inst: &Instance, v: Vertex) -> Cost {
    tree.eccentricity(inst, v)
}

/// Adjacency over an arbitrary acyclic edge subset, for repeated distance
/// queries. Vertices not touched by any edge are isolated.
#[derive(Debug, Clone)]
pub struct ForestView<'a> {
    inst: &'a Instance,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl<'a> ForestView<'a> {
    pub fn new(inst: &'a Instance, edges: &[EdgeId]) -> Self {
        let mut adj = vec![Vec::new(); inst.graph.n()];
        for &id in edges {
            let e = inst.graph.edge(id);
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        ForestView { inst, adj }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Reload distance from `s` to every vertex (`None` if unreachable).
    pub fn distances_from(&self, s: Vertex) -> Vec<Option<Cost>> {
        let mut dist = vec![None; self.adj.len()];
        dist[s] = Some(0);
        // (vertex, incoming edge, cost so far)
        let mut stack: Vec<(Vertex, Option<EdgeId>, Cost)> = vec![(s, None, 0)];
        while let Some((u, via, d)) = stack.pop() {
            for &(w, id) in &self.adj[u] {
                if Some(id) == via {
                    continue;
                }
                let step = match via {
                    Some(prev) => self.inst.reload(prev, id),
                    None => 0,
                };
                let dw = d + step;
                dist[w] = Some(dw);
                stack.push((w, Some(id), dw));
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: Vertex) -> Cost {
        self.distances_from(v).into_iter().flatten().max().unwrap_or(0)
    }

    /// Eccentricity of `v` restricted to the vertices accepted by `keep`.
    pub fn eccentricity_within(&self, v: Vertex, keep: impl Fn(Vertex) -> bool) -> Cost {
        self.distances_from(v)
            .into_iter()
            .enumerate()
            .filter(|&(w, _)| keep(w))
            .filter_map(|(_, d)| d)
            .max()
            .unwrap_or(0)
    }

    /// Largest finite reload distance over all vertex pairs.
    pub fn diameter(&self) -> Cost {
        let mut best = 0;
        for s in 0..self.adj.len() {
            // Leaves suffice: a maximal path can be extended to end at leaves
            // without decreasing its cost.
            if self.adj[s].len() > 1 {
                continue;
            }
            best = best.max(self.eccentricity(s));
        }
        best
    }

    /// Diameter, stopping early once it exceeds `limit`.
    pub fn diameter_exceeds(&self, limit: Cost) -> bool {
        (0..self.adj.len())
            .filter(|&s| self.adj[s].len() == 1)
            .any(|s| self.eccentricity(s) > limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(usize, usize, usize)], k: usize, pairs: &[(usize, usize, u64)]) -> Instance {
        let g = ColoredGraph::from_edges(n, edges.iter().copied()).unwrap();
        let mut c = ReloadCostTable::new(k);
        for &(a, b, x) in pairs {
            c.set(a, b, x);
        }
        Instance::new(g, c, None).unwrap()
    }

    #[test]
    fn path_costs() {
        let i = inst(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0)], 2, &[(0, 1, 5)]);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[0, 1]).unwrap(), 0);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[0, 1, 2]).unwrap(), 5);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[0, 1, 2, 3]).unwrap(), 10);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[3, 2, 1, 0]).unwrap(), 10);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[2]).unwrap(), 0);
        assert!(matches!(
            path_reload_cost(&i.graph, &i.costs, &[0, 2]),
            Err(Error::InvalidPath(_))
        ));
        assert!(path_reload_cost(&i.graph, &i.costs, &[0, 1, 0]).is_err());
    }

    #[test]
    fn alternating_colors_sum() {
        let i = inst(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0)], 2, &[(0, 1, 2)]);
        assert_eq!(path_reload_cost(&i.graph, &i.costs, &[0, 1, 2, 3]).unwrap(), 4);
    }

    #[test]
    fn star_distances() {
        // K_{1,3}, center 0, all center reloads 7.
        let i = inst(4, &[(0, 1, 0), (0, 2, 1), (0, 3, 2)], 3, &[(0, 1, 7), (0, 2, 7), (1, 2, 7)]);
        let t = SpanningForest::spanning_tree(&i.graph, vec![0, 1, 2]).unwrap();
        assert_eq!(t.reload_distance(&i, 1, 2), Some(7));
        assert_eq!(t.reload_distance(&i, 2, 2), Some(0));
        assert_eq!(t.eccentricity(&i, 0), 0);
        assert_eq!(t.eccentricity(&i, 1), 7);
        assert_eq!(t.diameter(&i).unwrap(), 7);
    }

    #[test]
    fn forest_queries() {
        let i = inst(4, &[(0, 1, 0), (2, 3, 0)], 1, &[]);
        let f = SpanningForest::new(&i.graph, vec![0, 1]).unwrap();
        assert_eq!(f.reload_distance(&i, 0, 3), None);
        assert_eq!(f.eccentricity(&i, 0), 0);
        assert!(matches!(f.diameter(&i), Err(Error::NotATree(_))));
        let iso = inst(1, &[], 1, &[]);
        let t = SpanningForest::spanning_tree(&iso.graph, vec![]).unwrap();
        assert_eq!(t.eccentricity(&iso, 0), 0);
        assert_eq!(t.diameter(&iso).unwrap(), 0);
    }

    #[test]
    fn path_diameter() {
        let i = inst(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3)], 4, &[(1, 2, 3), (2, 3, 4)]);
        let t = SpanningForest::spanning_tree(&i.graph, vec![0, 1, 2]).unwrap();
        assert_eq!(t.diameter(&i).unwrap(), 7);
    }

    #[test]
    fn cycle_rejected() {
        let g = ColoredGraph::from_edges(3, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap();
        assert!(SpanningForest::new(&g, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn graph_validation() {
        let mut g = ColoredGraph::new(3);
        assert_eq!(g.add_edge(0, 0, 0), Err(Error::SelfLoop(0)));
        assert!(g.add_edge(0, 3, 0).is_err());
        g.add_edge(0, 1, 0).unwrap();
        assert_eq!(g.add_edge(1, 0, 2), Err(Error::DuplicateEdge(1, 0)));
        let c = ReloadCostTable::new(1);
        g.add_edge(1, 2, 4).unwrap();
        assert!(matches!(Instance::new(g, c, None), Err(Error::ColorOutOfRange { .. })));
    }

    #[test]
    fn asymmetric_rejected() {
        assert_eq!(
            ReloadCostTable::from_rows(&[vec![0, 1], vec![2, 0]]),
            Err(Error::AsymmetricCosts(0, 1))
        );
    }

    #[test]
    fn triangle_inequality() {
        let zero = inst(3, &[(0, 1, 0), (0, 2, 1)], 2, &[]);
        assert!(check_triangle_inequality(&zero.graph, &zero.costs));
        // Star with c(a,b)=5 but c(a,c)=c(c,b)=1.
        let bad = inst(4, &[(0, 1, 0), (0, 2, 1), (0, 3, 2)], 3, &[(0, 1, 5), (0, 2, 1), (1, 2, 1)]);
        assert!(!check_triangle_inequality(&bad.graph, &bad.costs));
    }
}
