//! Dynamic program over a nice tree decomposition.
//!
//! Each table entry is a t-pair `(F, alpha)`. `F` is a small forest on the
//! bag vertices (terminals), their tree neighbors, and compressed
//! branching vertices. `alpha[x][a]` bounds the reload cost from terminal `x`
//! to anything that was compressed into element `a`, which is either a
//! vertex of `F` or an edge of `F` with no terminal endpoint. Every entry
//! stands for a class of partial solutions that behave alike from then on,
//! so the root table is nonempty exactly when a spanning tree of diameter at
//! most `k` exists.
//!
//! Three readings here are our own:
//! * fusion walks the connecting path and charges `alpha` per maximal
//!   single-forest segment and a reload at every switch between forests;
//! * a terminal edge that becomes external on forget covers no compressed
//!   vertices and gets `alpha = 0`;
//! * admissibility is checked through every internal terminal.

use std::collections::HashMap;

use crate::decomposition::{validate_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Cost, Dsu, EdgeId, Instance, ReloadCostTable, SpanningForest, Vertex};
use crate::search::{minimize_budget, Solution};

/// Kind of a node in a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    IntroduceVertex(Vertex),
    IntroduceEdge(EdgeId),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
    /// Number of distinct vertices forgotten at or below this node.
    pub forgotten: usize,
}

/// A nice tree decomposition. Children always precede their parent, and
/// the last node is the root, whose bag is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTriple {
    pub nodes: Vec<NiceNode>,
    pub n: usize,
}

impl NiceTriple {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|t| t.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn count(&self, pred: impl Fn(&NiceKind) -> bool) -> usize {
        self.nodes.iter().filter(|t| pred(&t.kind)).count()
    }

    /// Structural self-check; returns a description of the first problem.
    pub fn check(&self, g: &ColoredGraph) -> std::result::Result<(), String> {
        let mut introduced = vec![0usize; g.m()];
        for (id, t) in self.nodes.iter().enumerate() {
            let child_bag = |i: usize| &self.nodes[t.children[i]].bag;
            if t.children.iter().any(|&c| c >= id) {
                return Err(format!("node {id} has a child after it"));
            }
            let ok = match t.kind {
                NiceKind::Leaf => t.children.is_empty() && t.bag.is_empty(),
                NiceKind::IntroduceVertex(v) => {
                    t.children.len() == 1 && {
                        let mut b = child_bag(0).clone();
                        b.push(v);
                        b.sort_unstable();
                        !child_bag(0).contains(&v) && b == t.bag
                    }
                }
                NiceKind::IntroduceEdge(e) => {
                    introduced[e] += 1;
                    let ed = g.edge(e);
                    t.children.len() == 1 && *child_bag(0) == t.bag && t.bag.contains(&ed.u) && t.bag.contains(&ed.v)
                }
                NiceKind::Forget(v) => {
                    t.children.len() == 1 && {
                        let mut b = t.bag.clone();
                        b.push(v);
                        b.sort_unstable();
                        !t.bag.contains(&v) && b == *child_bag(0)
                    }
                }
                NiceKind::Join => t.children.len() == 2 && *child_bag(0) == t.bag && *child_bag(1) == t.bag,
            };
            if !ok {
                return Err(format!("node {id} ({:?}) is malformed", t.kind));
            }
        }
        if let Some(e) = introduced.iter().position(|&c| c != 1) {
            return Err(format!("edge {e} introduced {} times", introduced[e]));
        }
        let root = &self.nodes[self.root()];
        if !root.bag.is_empty() || root.forgotten != self.n {
            return Err("root must have an empty bag and cover every vertex".into());
        }
        Ok(())
    }
}

struct NiceBuilder<'g> {
    g: &'g ColoredGraph,
    td: &'g TreeDecomposition,
    tree_adj: Vec<Vec<usize>>,
    nodes: Vec<NiceNode>,
    edge_done: Vec<bool>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        let below: usize = children.iter().map(|&c| self.nodes[c].forgotten).sum();
        let forgotten = below + usize::from(matches!(kind, NiceKind::Forget(_)));
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
            forgotten,
        });
        self.nodes.len() - 1
    }

    fn forget(&mut self, mut top: usize, v: Vertex) -> usize {
        let bag = self.nodes[top].bag.clone();
        for &(w, id) in self.g.adj(v) {
            if !self.edge_done[id] && bag.binary_search(&w).is_ok() {
                self.edge_done[id] = true;
                top = self.push(NiceKind::IntroduceEdge(id), bag.clone(), vec![top]);
            }
        }
        let smaller: Vec<Vertex> = bag.into_iter().filter(|&x| x != v).collect();
        self.push(NiceKind::Forget(v), smaller, vec![top])
    }

    fn introduce(&mut self, top: usize, v: Vertex) -> usize {
        let mut bag = self.nodes[top].bag.clone();
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        self.push(NiceKind::IntroduceVertex(v), bag, vec![top])
    }

    /// Moves from the bag of `top` to `target` (forget first, then introduce).
    fn morph(&mut self, mut top: usize, target: &[Vertex]) -> usize {
        let cur = self.nodes[top].bag.clone();
        for v in cur.iter().copied().filter(|v| target.binary_search(v).is_err()) {
            top = self.forget(top, v);
        }
        for &v in target {
            if self.nodes[top].bag.binary_search(&v).is_err() {
                top = self.introduce(top, v);
            }
        }
        top
    }

    fn build(&mut self, b: usize, parent: Option<usize>) -> usize {
        let bag = self.td.bags[b].clone();
        let kids: Vec<usize> = self.tree_adj[b].iter().copied().filter(|&c| Some(c) != parent).collect();
        let mut tops = Vec::new();
        for c in kids {
            let sub = self.build(c, Some(b));
            tops.push(self.morph(sub, &bag));
        }
        if tops.is_empty() {
            let leaf = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
            tops.push(self.morph(leaf, &bag));
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = self.push(NiceKind::Join, bag.clone(), vec![acc, t]);
        }
        acc
    }
}

/// Converts a valid tree decomposition into a nice one of the same width.
/// Every edge of `g` is introduced exactly once, just before the first of
/// its endpoints is forgotten.
pub fn build_nice_triple(g: &ColoredGraph, td: &TreeDecomposition) -> Result<NiceTriple> {
    validate_decomposition(g, td).map_err(|v| Error::InvalidDecomposition(v.to_string()))?;
    let mut tree_adj = vec![Vec::new(); td.bags.len()];
    for &(a, b) in &td.edges {
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    let mut nb = NiceBuilder {
        g,
        td,
        tree_adj,
        nodes: Vec::new(),
        edge_done: vec![false; g.m()],
    };
    let top = nb.build(0, None);
    nb.morph(top, &[]);
    Ok(NiceTriple { nodes: nb.nodes, n: g.n() })
}

/// Where an element of the original forest ends up after reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Image {
    Vertex(usize),
    Edge(usize),
}

/// Output of [`reduce`]: the reduced forest in fresh indices plus the
/// reduce function for every original vertex and edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Old vertex to new vertex, for survivors.
    pub vertex_map: Vec<Option<usize>>,
    pub phi_vertex: Vec<Image>,
    pub phi_edge: Vec<Image>,
}

/// Repeatedly deletes degree-1 vertices and dissolves degree-2 vertices
/// outside the closed neighborhood of `s`. Every component must meet `s`.
pub fn reduce(n: usize, edges: &[(usize, usize)], s: &[usize]) -> Result<Reduced> {
    let mut dsu = Dsu::new(n);
    for &(a, b) in edges {
        if a >= n || b >= n || !dsu.union(a, b) {
            return Err(Error::Precondition("reduce expects a forest".into()));
        }
    }
    let mut has_s = vec![false; n];
    for &x in s {
        has_s[dsu.find(x)] = true;
    }
    if (0..n).any(|v| !has_s[dsu.find(v)]) {
        return Err(Error::Precondition("set is not good for the forest".into()));
    }

    #[derive(Clone, Copy)]
    enum Ptr {
        V(usize),
        E(usize),
    }
    let mut all_edges: Vec<(usize, usize)> = edges.to_vec();
    let mut edge_alive = vec![true; edges.len()];
    let mut vert_alive = vec![true; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push(id);
        adj[b].push(id);
    }
    let mut protected = vec![false; n];
    for &x in s {
        protected[x] = true;
    }
    for &(a, b) in edges {
        if s.contains(&a) || s.contains(&b) {
            protected[a] = true;
            protected[b] = true;
        }
    }
    let mut vptr: Vec<Option<Ptr>> = vec![None; n];
    let mut eptr: Vec<Option<Ptr>> = vec![None; edges.len()];
    let mut queue: Vec<usize> = (0..n).filter(|&v| !protected[v]).collect();
    while let Some(z) = queue.pop() {
        if !vert_alive[z] {
            continue;
        }
        let inc: Vec<usize> = adj[z].iter().copied().filter(|&e| edge_alive[e]).collect();
        let other = |e: usize| {
            let (a, b) = all_edges[e];
            if a == z {
                b
            } else {
                a
            }
        };
        match inc.len() {
            1 => {
                let y = other(inc[0]);
                vert_alive[z] = false;
                edge_alive[inc[0]] = false;
                vptr[z] = Some(Ptr::V(y));
                eptr[inc[0]] = Some(Ptr::V(y));
                if !protected[y] {
                    queue.push(y);
                }
            }
            2 => {
                let (p, q) = (other(inc[0]), other(inc[1]));
                let id = all_edges.len();
                all_edges.push((p, q));
                edge_alive.push(true);
                eptr.push(None);
                adj[p].push(id);
                adj[q].push(id);
                vert_alive[z] = false;
                for &e in &inc {
                    edge_alive[e] = false;
                    eptr[e] = Some(Ptr::E(id));
                }
                vptr[z] = Some(Ptr::E(id));
            }
            _ => {}
        }
    }

    let mut vertex_map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if vert_alive[v] {
            vertex_map[v] = Some(next);
            next += 1;
        }
    }
    let mut edge_map = vec![None; all_edges.len()];
    let mut new_edges = Vec::new();
    for (id, &(a, b)) in all_edges.iter().enumerate() {
        if edge_alive[id] {
            edge_map[id] = Some(new_edges.len());
            new_edges.push((vertex_map[a].expect("live endpoint"), vertex_map[b].expect("live endpoint")));
        }
    }
    let resolve = |mut p: Ptr| loop {
        match p {
            Ptr::V(v) => match vptr[v] {
                Some(q) => p = q,
                None => return Image::Vertex(vertex_map[v].expect("live vertex")),
            },
            Ptr::E(e) => match eptr[e] {
                Some(q) => p = q,
                None => return Image::Edge(edge_map[e].expect("live edge")),
            },
        }
    };
    let phi_vertex = (0..n).map(|v| resolve(Ptr::V(v))).collect();
    let phi_edge = (0..edges.len()).map(|e| resolve(Ptr::E(e))).collect();
    Ok(Reduced {
        n: next,
        edges: new_edges,
        vertex_map,
        phi_vertex,
        phi_edge,
    })
}

/// Marks a terminal and element in different components.
pub const BOT: Cost = Cost::MAX;
/// Color slot of an edge with no terminal endpoint.
pub const NO_COLOR: Color = Color::MAX;

/// Edge of a t-pair forest. Terminal edges carry their color; external
/// edges instead carry one `alpha` value per terminal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalEdge {
    pub a: usize,
    pub b: usize,
    pub color: Color,
    pub alpha: Vec<Cost>,
}

/// A t-pair. Vertices `0..w` are the bag vertices in sorted order; the rest
/// are anonymous. `alpha[z][x]` is the value for terminal `x` and vertex `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPair {
    pub w: usize,
    pub alpha: Vec<Vec<Cost>>,
    pub edges: Vec<LocalEdge>,
}

impl TPair {
    /// The pair with no terminals and an empty forest.
    pub fn empty() -> Self {
        TPair {
            w: 0,
            alpha: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Terminals only, no edges.
    pub fn isolated(w: usize) -> Self {
        let alpha = (0..w).map(|z| (0..w).map(|x| if x == z { 0 } else { BOT }).collect()).collect();
        TPair {
            w,
            alpha,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_terminal_edge(&self, e: &LocalEdge) -> bool {
        e.a < self.w || e.b < self.w
    }

    pub fn external_vertices(&self) -> usize {
        let mut near = vec![false; self.n()];
        near[..self.w].iter_mut().for_each(|x| *x = true);
        for e in &self.edges {
            if e.a < self.w || e.b < self.w {
                near[e.a] = true;
                near[e.b] = true;
            }
        }
        near.iter().filter(|&&x| !x).count()
    }

    pub fn external_edges(&self) -> usize {
        self.edges.iter().filter(|e| !self.is_terminal_edge(e)).count()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, i));
            adj[e.b].push((e.a, i));
        }
        adj
    }

    fn components(&self) -> Vec<usize> {
        let mut dsu = Dsu::new(self.n());
        for e in &self.edges {
            dsu.union(e.a, e.b);
        }
        (0..self.n()).map(|v| dsu.find(v)).collect()
    }

    /// Checks the t-pair conditions and the rule that `alpha` is `BOT`
    /// exactly across components. `k` bounds every other value.
    pub fn check(&self, k: Cost) -> std::result::Result<(), String> {
        let n = self.n();
        let comp = self.components();
        if self.edges.len() + comp.iter().enumerate().filter(|&(v, &c)| v == c).count() != n {
            return Err("not a forest".into());
        }
        for v in 0..n {
            if !(0..self.w).any(|x| comp[x] == comp[v]) {
                return Err(format!("component of local vertex {v} has no terminal"));
            }
        }
        if self.external_vertices() > self.w.saturating_sub(2) {
            return Err(format!("{} external vertices with {} terminals", self.external_vertices(), self.w));
        }
        if self.external_edges() > (2 * self.w).saturating_sub(3) {
            return Err(format!("{} external edges with {} terminals", self.external_edges(), self.w));
        }
        let law = |col: &[Cost], z: usize| {
            col.len() == self.w
                && (0..self.w).all(|x| (col[x] == BOT) == (comp[x] != comp[z]) && (col[x] == BOT || col[x] <= k))
        };
        for z in 0..n {
            if !law(&self.alpha[z], z) {
                return Err(format!("alpha column of vertex {z} breaks the component law"));
            }
        }
        for e in &self.edges {
            let terminal = self.is_terminal_edge(e);
            if terminal && (!e.alpha.is_empty() || e.color == NO_COLOR) {
                return Err("terminal edge must carry a color and no alpha".into());
            }
            if !terminal && (e.color != NO_COLOR || !law(&e.alpha, e.a)) {
                return Err("external edge must carry alpha and no color".into());
            }
        }
        Ok(())
    }

    fn code(&self, adj: &[Vec<(usize, usize)>], z: usize, via: Option<usize>, out: &mut Vec<u64>) {
        out.push(if z < self.w { z as u64 } else { u64::MAX });
        out.extend(&self.alpha[z]);
        match via {
            Some(e) => {
                let e = &self.edges[e];
                out.push(e.color as u64);
                out.extend(&e.alpha);
            }
            None => out.push(u64::MAX),
        }
        let mut kids: Vec<Vec<u64>> = adj[z]
            .iter()
            .filter(|&&(_, e)| Some(e) != via)
            .map(|&(y, e)| {
                let mut c = Vec::new();
                self.code(adj, y, Some(e), &mut c);
                c
            })
            .collect();
        kids.sort_unstable();
        out.push(kids.len() as u64);
        for k in kids {
            out.extend(k);
        }
    }

    /// Relabels anonymous vertices canonically and sorts edges, so equal
    /// pairs up to renaming compare equal. Pairs without terminals collapse
    /// to [`TPair::empty`].
    pub fn canonical(&self) -> TPair {
        if self.w == 0 {
            return TPair::empty();
        }
        let adj = self.adjacency();
        let mut new_id = vec![usize::MAX; self.n()];
        (0..self.w).for_each(|x| new_id[x] = x);
        let mut next = self.w;
        let mut seen = vec![false; self.n()];
        for root in 0..self.w {
            if seen[root] {
                continue;
            }
            // Depth-first, children ordered by their subtree codes.
            let mut stack = vec![(root, None::<usize>)];
            while let Some((z, via)) = stack.pop() {
                seen[z] = true;
                if new_id[z] == usize::MAX {
                    new_id[z] = next;
                    next += 1;
                }
                let mut kids: Vec<(Vec<u64>, usize, usize)> = adj[z]
                    .iter()
                    .filter(|&&(_, e)| Some(e) != via)
                    .map(|&(y, e)| {
                        let mut c = Vec::new();
                        self.code(&adj, y, Some(e), &mut c);
                        (c, y, e)
                    })
                    .collect();
                kids.sort_unstable();
                for (_, y, e) in kids.into_iter().rev() {
                    stack.push((y, Some(e)));
                }
            }
        }
        let mut alpha = vec![Vec::new(); self.n()];
        for z in 0..self.n() {
            alpha[new_id[z]] = self.alpha[z].clone();
        }
        let mut edges: Vec<LocalEdge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (new_id[e.a], new_id[e.b]);
                LocalEdge {
                    a: a.min(b),
                    b: a.max(b),
                    color: e.color,
                    alpha: e.alpha.clone(),
                }
            })
            .collect();
        edges.sort_unstable_by_key(|e| (e.a, e.b));
        TPair { w: self.w, alpha, edges }
    }

    /// Adds a new isolated terminal at bag position `pos`.
    pub fn introduce(&self, pos: usize) -> TPair {
        let shift = |z: usize| if z < pos { z } else { z + 1 };
        let widen = |col: &Vec<Cost>| {
            let mut c = col.clone();
            if !c.is_empty() {
                c.insert(pos, BOT);
            }
            c
        };
        let mut alpha: Vec<Vec<Cost>> = self.alpha.iter().map(widen).collect();
        let mut own = vec![BOT; self.w + 1];
        own[pos] = 0;
        alpha.insert(pos, own);
        let edges = self
            .edges
            .iter()
            .map(|e| LocalEdge {
                a: shift(e.a),
                b: shift(e.b),
                color: e.color,
                alpha: widen(&e.alpha),
            })
            .collect();
        TPair { w: self.w + 1, alpha, edges }
    }

    /// Turns terminal `i` into an ordinary vertex and reduces. Fails when
    /// `i` would be left in a component without terminals, unless `last`
    /// is set (the whole graph has been processed).
    pub fn forget(&self, i: usize, last: bool) -> Option<TPair> {
        if last {
            return (self.w == 1).then(TPair::empty);
        }
        if !(0..self.w).any(|x| x != i && self.alpha[i][x] != BOT) {
            return None;
        }
        let w = self.w - 1;
        let relabel = |z: usize| match z {
            z if z < i => z,
            z if z == i => w,
            z if z < self.w => z - 1,
            z => z,
        };
        let drop = |col: &Vec<Cost>| {
            let mut c = col.clone();
            c.remove(i);
            c
        };
        let mut alpha = vec![Vec::new(); self.n()];
        for z in 0..self.n() {
            alpha[relabel(z)] = drop(&self.alpha[z]);
        }
        let v_col = alpha[w].clone();
        let edges: Vec<LocalEdge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (relabel(e.a), relabel(e.b));
                if a >= w && b >= w && e.color != NO_COLOR {
                    let reach = v_col.iter().map(|&c| if c == BOT { BOT } else { 0 }).collect();
                    LocalEdge { a, b, color: NO_COLOR, alpha: reach }
                } else {
                    LocalEdge {
                        a,
                        b,
                        color: e.color,
                        alpha: if e.alpha.is_empty() { Vec::new() } else { drop(&e.alpha) },
                    }
                }
            })
            .collect();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.a, e.b)).collect();
        let terminals: Vec<usize> = (0..w).collect();
        let red = reduce(alpha.len(), &pairs, &terminals).expect("terminals stay good after forget");
        let mut new_alpha = vec![vec![0; w]; red.n];
        let mut new_edge_alpha: Vec<Vec<Cost>> = vec![vec![0; w]; red.edges.len()];
        let merge = |dst: &mut Vec<Cost>, src: &[Cost]| {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = if s == BOT { BOT } else { (*d).max(s) };
            }
        };
        for (z, img) in red.phi_vertex.iter().enumerate() {
            match *img {
                Image::Vertex(y) => merge(&mut new_alpha[y], &alpha[z]),
                Image::Edge(f) => merge(&mut new_edge_alpha[f], &alpha[z]),
            }
        }
        for (id, img) in red.phi_edge.iter().enumerate() {
            let src = &edges[id].alpha;
            if src.is_empty() {
                continue;
            }
            match *img {
                Image::Vertex(y) => merge(&mut new_alpha[y], src),
                Image::Edge(f) => merge(&mut new_edge_alpha[f], src),
            }
        }
        // Survivors keep their own color; new edges are external.
        let mut color_of: HashMap<(usize, usize), Color> = HashMap::new();
        for e in &edges {
            if let (Some(a), Some(b)) = (red.vertex_map[e.a], red.vertex_map[e.b]) {
                color_of.insert((a.min(b), a.max(b)), e.color);
            }
        }
        let out_edges = red
            .edges
            .iter()
            .zip(new_edge_alpha)
            .map(|(&(a, b), al)| {
                let color = color_of.get(&(a.min(b), a.max(b))).copied().unwrap_or(NO_COLOR);
                let terminal = a < w || b < w;
                LocalEdge {
                    a,
                    b,
                    color,
                    alpha: if terminal { Vec::new() } else { al },
                }
            })
            .collect();
        Some(TPair {
            w,
            alpha: new_alpha,
            edges: out_edges,
        })
    }
}

/// A single edge between terminals `x` and `y`.
pub fn edge_pair(w: usize, x: usize, y: usize, color: Color) -> TPair {
    let mut p = TPair::isolated(w);
    p.alpha[x][y] = 0;
    p.alpha[y][x] = 0;
    p.edges.push(LocalEdge {
        a: x.min(y),
        b: x.max(y),
        color,
        alpha: Vec::new(),
    });
    p
}

/// Why two pairs cannot be fused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FuseError {
    #[error("the two forests differ in terminal count")]
    TerminalMismatch,
    #[error("the union of the two forests has a cycle")]
    Cycle,
}

/// Fuses two pairs over the same terminals into one on the union forest.
/// Only terminals are shared; `alpha` of the result is computed by walking
/// each terminal-to-element path and summing the per-forest segments plus
/// the reload cost at every terminal where the path switches forest.
pub fn fuse(p1: &TPair, p2: &TPair, costs: &ReloadCostTable) -> std::result::Result<TPair, FuseError> {
    if p1.w != p2.w {
        return Err(FuseError::TerminalMismatch);
    }
    let w = p1.w;
    let (n1, n2) = (p1.n(), p2.n());
    let n = n1 + n2 - w;
    let sides = [p1, p2];
    let to_union = |side: usize, z: usize| if side == 0 || z < w { z } else { n1 + z - w };
    let to_side = |side: usize, z: usize| if side == 0 || z < w { z } else { z - n1 + w };
    // (a, b, side, index within side)
    let mut uedges = Vec::with_capacity(p1.edges.len() + p2.edges.len());
    let mut dsu = Dsu::new(n);
    for (side, p) in sides.iter().enumerate() {
        for (i, e) in p.edges.iter().enumerate() {
            let (a, b) = (to_union(side, e.a), to_union(side, e.b));
            if !dsu.union(a, b) {
                return Err(FuseError::Cycle);
            }
            uedges.push((a, b, side, i));
        }
    }
    let mut adj = vec![Vec::new(); n];
    for (id, &(a, b, _, _)) in uedges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }

    #[derive(Clone, Copy)]
    struct St {
        base: Cost,
        from: usize,
        side: usize,
        color: Color,
    }
    let mut alpha = vec![vec![BOT; w]; n];
    let mut ealpha = vec![vec![BOT; w]; uedges.len()];
    for s in 0..w {
        alpha[s][s] = 0;
        let mut state: Vec<Option<St>> = vec![None; n];
        let mut stack = vec![(s, usize::MAX)];
        while let Some((z, via)) = stack.pop() {
            for &(y, id) in &adj[z] {
                if id == via {
                    continue;
                }
                let (_, _, side, idx) = uedges[id];
                let e = &sides[side].edges[idx];
                let st = match state[z] {
                    None => St {
                        base: 0,
                        from: s,
                        side,
                        color: e.color,
                    },
                    Some(cur) if cur.side == side => St { color: e.color, ..cur },
                    Some(cur) => {
                        debug_assert!(z < w, "forests may only meet at terminals");
                        let seg = sides[cur.side].alpha[to_side(cur.side, z)][cur.from];
                        St {
                            base: cur.base + seg + costs.get(cur.color, e.color),
                            from: z,
                            side,
                            color: e.color,
                        }
                    }
                };
                if !e.alpha.is_empty() {
                    ealpha[id][s] = st.base + e.alpha[st.from];
                }
                alpha[y][s] = st.base + sides[side].alpha[to_side(side, y)][st.from];
                state[y] = Some(st);
                stack.push((y, id));
            }
        }
    }
    let edges = uedges
        .iter()
        .zip(ealpha)
        .map(|(&(a, b, side, idx), ea)| {
            let e = &sides[side].edges[idx];
            LocalEdge {
                a,
                b,
                color: e.color,
                alpha: if e.alpha.is_empty() { Vec::new() } else { ea },
            }
        })
        .collect();
    Ok(TPair { w, alpha, edges })
}

/// Whether every value is at most `k` and, for every terminal `b` and two
/// of its edges, the worst element behind one edge plus the reload at `b`
/// plus the worst element behind the other stays within `k`.
pub fn is_admissible(p: &TPair, costs: &ReloadCostTable, k: Cost) -> bool {
    let bounded = |col: &[Cost]| col.iter().all(|&c| c == BOT || c <= k);
    if !p.alpha.iter().all(|c| bounded(c)) || !p.edges.iter().all(|e| bounded(&e.alpha)) {
        return false;
    }
    let adj = p.adjacency();
    for b in 0..p.w {
        // Worst value behind each incident edge.
        let branches: Vec<(Color, Cost)> = adj[b]
            .iter()
            .map(|&(y, id)| {
                let mut worst = 0;
                let mut stack = vec![(y, id)];
                while let Some((z, via)) = stack.pop() {
                    worst = worst.max(p.alpha[z][b]);
                    for &(x, e) in &adj[z] {
                        if e != via {
                            if let Some(&a) = p.edges[e].alpha.get(b) {
                                worst = worst.max(a);
                            }
                            stack.push((x, e));
                        }
                    }
                }
                (p.edges[id].color, worst)
            })
            .collect();
        for (i, &(c1, m1)) in branches.iter().enumerate() {
            for &(c2, m2) in &branches[i + 1..] {
                if m1 + costs.get(c1, c2) + m2 > k {
                    return false;
                }
            }
        }
    }
    true
}

/// Limits for the dynamic program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptConfig {
    /// Largest table allowed at any node.
    pub table_cap: usize,
    /// Check every stored pair against the t-pair conditions, even in
    /// release builds.
    pub verify_pairs: bool,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig {
            table_cap: 250_000,
            verify_pairs: false,
        }
    }
}

/// Table-size bound shaped like `k^(D*w^2) * (D*w)^w` with `w` the largest
/// bag size and `D` the maximum degree, clipped to `limit`.
pub fn shaped_table_cap(k: Cost, width: usize, max_degree: usize, limit: usize) -> usize {
    let w = width as u32 + 1;
    let d = max_degree.max(1) as u32;
    let base = (k.max(1) + 1) as u128;
    let a = base.checked_pow(d * w * w);
    let b = ((d * w) as u128).checked_pow(w);
    match a.zip(b).and_then(|(a, b)| a.checked_mul(b)) {
        Some(x) if x < limit as u128 => x as usize,
        _ => limit,
    }
}

#[derive(Debug, Clone, Copy)]
enum Prov {
    Leaf,
    One(usize),
    Edge(usize, bool),
    Two(usize, usize),
}

#[derive(Default)]
struct Table {
    pairs: Vec<TPair>,
    index: HashMap<TPair, usize>,
    prov: Vec<Prov>,
}

impl Table {
    fn insert(&mut self, p: TPair, prov: Prov) {
        let p = p.canonical();
        if !self.index.contains_key(&p) {
            self.index.insert(p.clone(), self.pairs.len());
            self.pairs.push(p);
            self.prov.push(prov);
        }
    }
}

/// Sizes seen during one run of the dynamic program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FptStats {
    pub nodes: usize,
    pub max_table: usize,
    pub total_entries: usize,
}

/// The dynamic program bound to one instance and nice decomposition.
pub struct FptSolver<'a> {
    inst: &'a Instance,
    nice: NiceTriple,
    cfg: FptConfig,
}

impl<'a> FptSolver<'a> {
    pub fn new(inst: &'a Instance, td: &TreeDecomposition, cfg: FptConfig) -> Result<Self> {
        if !inst.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let nice = build_nice_triple(&inst.graph, td)?;
        Ok(FptSolver { inst, nice, cfg })
    }

    pub fn nice(&self) -> &NiceTriple {
        &self.nice
    }

    /// A spanning tree of diameter at most `k`, if one exists.
    pub fn decide(&self, k: Cost) -> Result<Option<SpanningForest>> {
        self.decide_with_stats(k).map(|(t, _)| t)
    }

    pub fn decide_with_stats(&self, k: Cost) -> Result<(Option<SpanningForest>, FptStats)> {
        let g = &self.inst.graph;
        let costs = &self.inst.costs;
        let nodes = &self.nice.nodes;
        let mut tables: Vec<Table> = Vec::with_capacity(nodes.len());
        let mut stats = FptStats {
            nodes: nodes.len(),
            ..FptStats::default()
        };
        for (id, t) in nodes.iter().enumerate() {
            let mut out = Table::default();
            let cap = self.cfg.table_cap;
            let check = |out: &Table| {
                if out.pairs.len() > cap {
                    Err(Error::TableCap {
                        node: id,
                        size: out.pairs.len(),
                        cap,
                    })
                } else {
                    Ok(())
                }
            };
            match t.kind {
                NiceKind::Leaf => out.insert(TPair::empty(), Prov::Leaf),
                NiceKind::IntroduceVertex(v) => {
                    let pos = t.bag.binary_search(&v).expect("introduced vertex in bag");
                    for (i, p) in tables[t.children[0]].pairs.iter().enumerate() {
                        out.insert(p.introduce(pos), Prov::One(i));
                    }
                }
                NiceKind::IntroduceEdge(e) => {
                    let ed = g.edge(e);
                    let x = t.bag.binary_search(&ed.u).expect("endpoint in bag");
                    let y = t.bag.binary_search(&ed.v).expect("endpoint in bag");
                    let single = edge_pair(t.bag.len(), x, y, ed.color);
                    for (i, p) in tables[t.children[0]].pairs.iter().enumerate() {
                        out.insert(p.clone(), Prov::Edge(i, false));
                        if p.alpha[x][y] == BOT {
                            let f = fuse(p, &single, costs).expect("endpoints in different components");
                            if is_admissible(&f, costs, k) {
                                out.insert(f, Prov::Edge(i, true));
                            }
                        }
                        check(&out)?;
                    }
                }
                NiceKind::Forget(v) => {
                    let child = &nodes[t.children[0]];
                    let pos = child.bag.binary_search(&v).expect("forgotten vertex in child bag");
                    let last = t.bag.is_empty() && t.forgotten == g.n();
                    for (i, p) in tables[t.children[0]].pairs.iter().enumerate() {
                        if let Some(f) = p.forget(pos, last) {
                            out.insert(f, Prov::One(i));
                        }
                    }
                }
                NiceKind::Join => {
                    let (l, r) = (&tables[t.children[0]], &tables[t.children[1]]);
                    for (i, p) in l.pairs.iter().enumerate() {
                        for (j, q) in r.pairs.iter().enumerate() {
                            if let Ok(f) = fuse(p, q, costs) {
                                if is_admissible(&f, costs, k) {
                                    out.insert(f, Prov::Two(i, j));
                                }
                            }
                        }
                        check(&out)?;
                    }
                }
            }
            check(&out)?;
            if (self.cfg.verify_pairs || cfg!(debug_assertions)) && id != self.nice.root() {
                for p in &out.pairs {
                    if let Err(msg) = p.check(k) {
                        panic!("invalid t-pair at node {id}: {msg}");
                    }
                }
            }
            stats.max_table = stats.max_table.max(out.pairs.len());
            stats.total_entries += out.pairs.len();
            for &c in &t.children {
                tables[c].pairs = Vec::new();
                tables[c].index = HashMap::new();
            }
            tables.push(out);
        }
        let root = self.nice.root();
        if tables[root].pairs.is_empty() {
            return Ok((None, stats));
        }
        let tree = SpanningForest::spanning_tree(g, self.witness_edges(&tables))?;
        let d = tree.diameter(self.inst)?;
        assert!(d <= k, "dynamic program witness has diameter {d} > {k}");
        Ok((Some(tree), stats))
    }

    fn witness_edges(&self, tables: &[Table]) -> Vec<EdgeId> {
        let mut used = Vec::new();
        let mut stack = vec![(self.nice.root(), 0usize)];
        while let Some((t, i)) = stack.pop() {
            let node = &self.nice.nodes[t];
            match tables[t].prov[i] {
                Prov::Leaf => {}
                Prov::One(j) => stack.push((node.children[0], j)),
                Prov::Edge(j, take) => {
                    if take {
                        if let NiceKind::IntroduceEdge(e) = node.kind {
                            used.push(e);
                        }
                    }
                    stack.push((node.children[0], j));
                }
                Prov::Two(a, b) => {
                    stack.push((node.children[0], a));
                    stack.push((node.children[1], b));
                }
            }
        }
        used
    }

    pub fn solve(&self) -> Result<Solution> {
        minimize_budget(self.inst.diameter_upper_bound(), |k| self.decide(k))
    }
}

/// Decision version with the default configuration.
pub fn solve_fpt_decision(inst: &Instance, k: Cost, td: &TreeDecomposition) -> Result<Option<SpanningForest>> {
    FptSolver::new(inst, td, FptConfig::default())?.decide(k)
}

/// Exact optimum with the default configuration.
pub fn solve_fpt(inst: &Instance, td: &TreeDecomposition) -> Result<Solution> {
    FptSolver::new(inst, td, FptConfig::default())?.solve()
}
