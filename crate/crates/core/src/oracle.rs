//! Exhaustive ground truth: spanning-tree enumeration and exact optimum by
//! brute force. Intended for small graphs only.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Cost, Dsu, EdgeId, ForestView, Instance, SpanningForest, Vertex};

/// Default cap on enumerated trees.
pub const DEFAULT_MAX_TREES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub opt: Cost,
    pub witness: SpanningForest,
    pub trees_enumerated: u64,
}

/// Union-find without path compression, so unions can be undone in LIFO order.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<usize>>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some(b));
        true
    }

    fn undo(&mut self) {
        if let Some(Some(b)) = self.history.pop() {
            let a = self.parent[b];
            self.size[a] -= self.size[b];
            self.parent[b] = b;
        }
    }
}

/// Whether `chosen` together with `rest` connects every vertex.
fn connectable(graph: &ColoredGraph, chosen: &[EdgeId], rest: &[EdgeId]) -> bool {
    let mut dsu = Dsu::new(graph.n());
    let mut comps = graph.n();
    for &id in chosen.iter().chain(rest) {
        let e = graph.edge(id);
        if dsu.union(e.u, e.v) {
            comps -= 1;
        }
    }
    comps <= 1
}

struct Enumerator<'g, F> {
    graph: &'g ColoredGraph,
    order: Vec<EdgeId>,
    dsu: RollbackDsu,
    chosen: Vec<EdgeId>,
    visit: F,
}

impl<F: FnMut(&[EdgeId]) -> ControlFlow<()>> Enumerator<'_, F> {
    fn run(&mut self, i: usize) -> ControlFlow<()> {
        let need = self.graph.n().saturating_sub(1);
        if self.chosen.len() == need {
            return (self.visit)(&self.chosen);
        }
        if i == self.order.len() || self.order.len() - i < need - self.chosen.len() {
            return ControlFlow::Continue(());
        }
        let id = self.order[i];
        let e = self.graph.edge(id);
        if self.dsu.union(e.u, e.v) {
            self.chosen.push(id);
            let r = self.run(i + 1);
            self.chosen.pop();
            self.dsu.undo();
            r?;
        } else {
            self.dsu.undo();
        }
        if connectable(self.graph, &self.chosen, &self.order[i + 1..]) {
            self.run(i + 1)?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` once per spanning tree (as a sorted edge-id list), in a
/// fixed include-before-exclude order over edge ids. Stops early when
/// `visit` breaks.
pub fn for_each_spanning_tree<F>(graph: &ColoredGraph, visit: F) -> Result<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut en = Enumerator {
        graph,
        order: (0..graph.m()).collect(),
        dsu: RollbackDsu::new(graph.n()),
        chosen: Vec::new(),
        visit,
    };
    let _ = en.run(0);
    Ok(())
}

/// Every spanning tree of `graph`, failing once more than `max_trees` exist.
pub fn enumerate_spanning_trees(graph: &ColoredGraph, max_trees: u64) -> Result<Vec<SpanningForest>> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_spanning_tree(graph, |edges| {
        if out.len() as u64 == max_trees {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(SpanningForest::spanning_tree(graph, edges.to_vec()).expect("enumerated tree"));
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::EnumerationBudget { limit: max_trees });
    }
    Ok(out)
}

/// Exact optimum over all spanning trees; the first tree in enumeration
/// order attaining it is the witness.
pub fn solve_bruteforce(inst: &Instance, max_trees: u64) -> Result<OracleResult> {
    let mut best: Option<(Cost, Vec<EdgeId>)> = None;
    let mut count = 0u64;
    let mut over = false;
    for_each_spanning_tree(&inst.graph, |edges| {
        if count == max_trees {
            over = true;
            return ControlFlow::Break(());
        }
        count += 1;
        let d = ForestView::new(inst, edges).diameter();
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, edges.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::EnumerationBudget { limit: max_trees });
    }
    let (opt, edges) = best.expect("connected graph has a spanning tree");
    Ok(OracleResult {
        opt,
        witness: SpanningForest::spanning_tree(&inst.graph, edges)?,
        trees_enumerated: count,
    })
}

/// Growing forest with LIFO edge insertion and removal.
struct Growing<'a> {
    inst: &'a Instance,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Growing<'_> {
    fn push(&mut self, id: EdgeId) {
        let e = self.inst.graph.edge(id);
        self.adj[e.u].push((e.v, id));
        self.adj[e.v].push((e.u, id));
    }

    fn pop(&mut self, id: EdgeId) {
        let e = self.inst.graph.edge(id);
        let a = self.adj[e.u].pop();
        let b = self.adj[e.v].pop();
        debug_assert_eq!(a.map(|x| x.1), Some(id));
        debug_assert_eq!(b.map(|x| x.1), Some(id));
    }

    /// Largest reload cost of a path that enters `s` through `via` and then
    /// continues into the current component of `s` (0 if `s` is isolated).
    fn reach(&self, s: Vertex, via: EdgeId) -> Cost {
        let mut best = 0;
        let mut stack: Vec<(Vertex, EdgeId, Cost)> = vec![(s, via, 0)];
        while let Some((u, prev, d)) = stack.pop() {
            best = best.max(d);
            for &(w, id) in &self.adj[u] {
                if id == prev {
                    continue;
                }
                stack.push((w, id, d + self.inst.reload(prev, id)));
            }
        }
        best
    }
}

struct Decider<'a> {
    order: Vec<EdgeId>,
    dsu: RollbackDsu,
    chosen: Vec<EdgeId>,
    forest: Growing<'a>,
    k: Cost,
    nodes: u64,
    max_nodes: u64,
}

impl Decider<'_> {
    fn run(&mut self, i: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::EnumerationBudget { limit: self.max_nodes });
        }
        let g = &self.forest.inst.graph;
        let need = g.n().saturating_sub(1);
        if self.chosen.len() == need {
            return Ok(true);
        }
        if i == self.order.len() {
            return Ok(false);
        }
        let id = self.order[i];
        let e = g.edge(id);
        if self.dsu.union(e.u, e.v) {
            // New paths all cross `id`; partial diameters only grow.
            let fits = self.forest.reach(e.u, id) + self.forest.reach(e.v, id) <= self.k;
            if fits {
                self.forest.push(id);
                self.chosen.push(id);
                let found = self.run(i + 1)?;
                if found {
                    return Ok(true);
                }
                self.chosen.pop();
                self.forest.pop(id);
            }
        }
        self.dsu.undo();
        if connectable(g, &self.chosen, &self.order[i + 1..]) {
            return self.run(i + 1);
        }
        Ok(false)
    }
}

/// Decides whether some spanning tree has diameter at most `k` by
/// exhaustive search over forests, pruning any partial forest whose
/// diameter already exceeds `k`. `max_nodes` bounds the search tree.
pub fn decide_bruteforce(inst: &Instance, k: Cost, max_nodes: u64) -> Result<Option<SpanningForest>> {
    let g = &inst.graph;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut d = Decider {
        order: bfs_edge_order(g),
        dsu: RollbackDsu::new(g.n()),
        chosen: Vec::new(),
        forest: Growing {
            inst,
            adj: vec![Vec::new(); g.n()],
        },
        k,
        nodes: 0,
        max_nodes,
    };
    if !d.run(0)? {
        return Ok(None);
    }
    let tree = SpanningForest::spanning_tree(g, d.chosen)?;
    assert!(tree.diameter(inst)? <= k, "decision witness exceeds budget");
    Ok(Some(tree))
}

/// Edges in the order they are first seen by a BFS from vertex 0, so that
/// partial forests stay clustered and the diameter pruning bites early.
fn bfs_edge_order(g: &ColoredGraph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    let mut queue = std::collections::VecDeque::new();
    if g.n() > 0 {
        seen_v[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &(w, id) in g.adj(u) {
            if !seen_e[id] {
                seen_e[id] = true;
                order.push(id);
            }
            if !seen_v[w] {
                seen_v[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}
