//! Exact polynomial-time solver for cacti.
//!
//! The block tree is processed bottom-up. For every block `B` and edge `e`
//! of `B` the solver stores `lambda_B(e)`: a spanning tree of the subgraph
//! below `B` (avoiding `e` when `B` is a cycle) with diameter at most `k`
//! that minimizes the reload eccentricity of the anchor `a(B)` on each side
//! of `e`, or nothing if no such tree exists.
//!
//! Cycle children are combined through a 2-SAT formula. For a child cycle
//! `c_0 = a(C), c_1, ..., c_{L-1}` with edges `e_p = {c_p, c_{p+1}}`, the
//! variable `F_p` stands for the forward part of `lambda_C(e_p)` (the side
//! holding `c_1 .. c_p`) and `Bk_p` for its backward part. In a model,
//! `F_p` holds iff the child drops an edge at or after position `p`, and
//! `Bk_p` iff it drops one at or before `p`. The minimal forward
//! eccentricity is nondecreasing in `p` over feasible positions (and the
//! backward one nonincreasing), so every threshold constraint on a side is
//! a single literal and pairwise budget constraints become 2-clauses.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Cost, EdgeId, ForestView, Instance, SpanningForest, Vertex};
use crate::search::{minimize_budget, Solution};
use crate::twosat::{solve_2sat, Lit, TwoSatFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Edge,
    Cycle,
}

/// A block of a cactus, oriented towards the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    /// Cycle order starting at the anchor; `[anchor, other]` for an edge.
    pub vertices: Vec<Vertex>,
    /// `edges[p]` joins `vertices[p]` and `vertices[(p + 1) % len]`.
    pub edges: Vec<EdgeId>,
    pub anchor: Vertex,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    pub root_vertex: Vertex,
    /// `None` only for the single-vertex graph.
    pub root_block: Option<usize>,
    /// Blocks in breadth-first order from the root block.
    pub order: Vec<usize>,
}

impl BlockTree {
    pub fn num_cycles(&self) -> usize {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Cycle).count()
    }
}

/// Biconnected components as edge lists (Hopcroft-Tarjan).
fn biconnected_components(g: &ColoredGraph) -> Vec<Vec<EdgeId>> {
    struct St<'g> {
        g: &'g ColoredGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<EdgeId>,
        out: Vec<Vec<EdgeId>>,
    }
    fn dfs(s: &mut St, u: Vertex, via: Option<EdgeId>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &(w, id) in s.g.adj(u) {
            if Some(id) == via {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push(id);
                dfs(s, w, Some(id));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(x) = s.stack.pop() {
                        comp.push(x);
                        if x == id {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push(id);
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = St {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

/// Block tree of a connected cactus, rooted at the block holding the
/// lowest-id non-cut vertex.
pub fn compute_block_tree(g: &ColoredGraph) -> Result<BlockTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let comps = biconnected_components(g);
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut raw: Vec<(Vec<Vertex>, Vec<EdgeId>)> = Vec::new();
    for comp in comps {
        let mut vs: Vec<Vertex> = comp.iter().flat_map(|&id| [g.edge(id).u, g.edge(id).v]).collect();
        vs.sort_unstable();
        vs.dedup();
        let is_cycle = comp.len() == vs.len()
            && vs.iter().all(|&v| comp.iter().filter(|&&id| g.edge(id).touches(v)).count() == 2);
        if comp.len() > 1 && !is_cycle {
            return Err(Error::NotACactus { block: vs });
        }
        for &v in &vs {
            blocks_of[v].push(raw.len());
        }
        raw.push((vs, comp));
    }
    let cut_vertices: Vec<Vertex> = (0..g.n()).filter(|&v| blocks_of[v].len() > 1).collect();
    let root_vertex = (0..g.n()).find(|&v| blocks_of[v].len() <= 1).unwrap_or(0);
    if raw.is_empty() {
        return Ok(BlockTree {
            blocks: Vec::new(),
            cut_vertices,
            root_vertex,
            root_block: None,
            order: Vec::new(),
        });
    }
    let root_block = blocks_of[root_vertex][0];
    let mut anchor = vec![usize::MAX; raw.len()];
    let mut parent = vec![None; raw.len()];
    let mut children = vec![Vec::new(); raw.len()];
    anchor[root_block] = root_vertex;
    let mut order = vec![root_block];
    let mut head = 0;
    while head < order.len() {
        let b = order[head];
        head += 1;
        for &v in &raw[b].0 {
            if v == anchor[b] {
                continue;
            }
            for &c in &blocks_of[v] {
                if c != b {
                    anchor[c] = v;
                    parent[c] = Some(b);
                    children[b].push(c);
                    order.push(c);
                }
            }
        }
    }
    let blocks = raw
        .into_iter()
        .enumerate()
        .map(|(b, (_, edges))| orient(g, edges, anchor[b], parent[b], std::mem::take(&mut children[b])))
        .collect();
    Ok(BlockTree {
        blocks,
        cut_vertices,
        root_vertex,
        root_block: Some(root_block),
        order,
    })
}

fn orient(g: &ColoredGraph, edges: Vec<EdgeId>, anchor: Vertex, parent: Option<usize>, children: Vec<usize>) -> Block {
    if edges.len() == 1 {
        let e = g.edge(edges[0]);
        return Block {
            kind: BlockKind::Edge,
            vertices: vec![anchor, e.other(anchor)],
            edges,
            anchor,
            parent,
            children,
        };
    }
    // Walk the cycle from the anchor towards its lower-id neighbor.
    let at = |v: Vertex| -> Vec<(Vertex, EdgeId)> {
        let mut inc: Vec<(Vertex, EdgeId)> = edges
            .iter()
            .filter(|&&id| g.edge(id).touches(v))
            .map(|&id| (g.edge(id).other(v), id))
            .collect();
        inc.sort_unstable();
        inc
    };
    let mut vertices = vec![anchor];
    let mut order = Vec::with_capacity(edges.len());
    let (mut cur, mut via) = (anchor, None);
    for _ in 0..edges.len() {
        let (w, id) = at(cur)
            .into_iter()
            .find(|&(_, id)| Some(id) != via)
            .expect("cycle vertex has two block edges");
        order.push(id);
        if w != anchor {
            vertices.push(w);
        }
        cur = w;
        via = Some(id);
    }
    Block {
        kind: BlockKind::Cycle,
        vertices,
        edges: order,
        anchor,
        parent,
        children,
    }
}

/// One `lambda_B(e)` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    /// Edge ids of the stored tree, sorted.
    pub tree: Vec<EdgeId>,
    /// Eccentricity of the anchor on the forward side (through
    /// `edges[0]`); `None` when that side is just the anchor. For an edge
    /// block this is the anchor's eccentricity in the whole tree.
    pub fwd: Option<Cost>,
    /// Eccentricity of the anchor on the backward side (through the last
    /// cycle edge); always `None` for edge blocks.
    pub bwd: Option<Cost>,
}

/// `lambda` values indexed by block, then by position of the dropped edge
/// (index 0 for edge blocks).
pub type LambdaTables = Vec<Vec<Option<Lambda>>>;

/// Result of one bottom-up pass at a fixed budget.
#[derive(Debug, Clone)]
pub struct LambdaRun {
    pub tables: LambdaTables,
    /// First block found with every entry empty, if any; blocks after it in
    /// processing order are left unfilled.
    pub failed_block: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Fwd,
    Bwd,
}

/// A side subtree of a child cycle's `lambda` entry, as a 2-SAT variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RVar {
    pub child: usize,
    /// Position of the dropped edge in the child cycle.
    pub pos: usize,
    pub side: Side,
    /// Anchor eccentricity on that side (`None` for the bare anchor).
    pub ecc: Option<Cost>,
    /// Edges of the side subtree.
    pub edges: Vec<EdgeId>,
}

/// The three formulas for one `(B, e, i, j)` plus the unit clauses that
/// confine the model to valid choices within the `(e, i, j)` budgets.
#[derive(Debug, Clone)]
pub struct Phi {
    pub vars: Vec<RVar>,
    pub phi0: Vec<(Lit, Lit)>,
    pub phi1: Vec<(Lit, Lit)>,
    pub phi2: Vec<(Lit, Lit)>,
    pub restrict: Vec<Lit>,
}

impl Phi {
    pub fn formula(&self) -> TwoSatFormula {
        let mut f = TwoSatFormula::new(self.vars.len());
        for &(a, b) in self.phi0.iter().chain(&self.phi1).chain(&self.phi2) {
            f.add_clause(a, b);
        }
        for &l in &self.restrict {
            f.add_unit(l);
        }
        f
    }
}

/// Single-source path data in a tree: cost, first and last edge.
struct Paths {
    dist: Vec<Option<Cost>>,
    first: Vec<Option<EdgeId>>,
    last: Vec<Option<EdgeId>>,
}

fn paths_from(inst: &Instance, adj: &[Vec<(Vertex, EdgeId)>], s: Vertex) -> Paths {
    let n = adj.len();
    let mut p = Paths {
        dist: vec![None; n],
        first: vec![None; n],
        last: vec![None; n],
    };
    p.dist[s] = Some(0);
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        let du = p.dist[u].expect("visited");
        for &(w, id) in &adj[u] {
            if Some(id) == p.last[u] {
                continue;
            }
            let step = p.last[u].map_or(0, |prev| inst.reload(prev, id));
            p.dist[w] = Some(du + step);
            p.first[w] = Some(p.first[u].unwrap_or(id));
            p.last[w] = Some(id);
            stack.push(w);
        }
    }
    p
}

fn adjacency(inst: &Instance, edges: &[EdgeId]) -> Vec<Vec<(Vertex, EdgeId)>> {
    let mut adj = vec![Vec::new(); inst.graph.n()];
    for &id in edges {
        let e = inst.graph.edge(id);
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }
    adj
}

/// Everything about `T^e` that the budget checks need.
struct Context<'a> {
    inst: &'a Instance,
    k: Cost,
    te: Vec<EdgeId>,
    te_diam: Cost,
    /// Side of `B` each vertex of `T^e` hangs from (as seen from `a(B)`).
    from_anchor: Paths,
    fwd_edge: EdgeId,
    ecc_fwd: Cost,
    ecc_bwd: Cost,
    /// Per anchor of a cycle child: path data from that vertex.
    from_child: HashMap<Vertex, Paths>,
    vars: Vec<RVar>,
    /// For each variable: anchor of its child and its entry edge.
    entry: Vec<(Vertex, EdgeId)>,
    /// Per child (in order): feasible positions and the (F, Bk) variable ids.
    chains: Vec<Vec<(usize, usize, usize)>>,
    /// Largest cost from entering `a` via `f` into `T^e`.
    reach: HashMap<(Vertex, EdgeId), Cost>,
}

impl Context<'_> {
    fn side_of(&self, v: Vertex) -> Side {
        match self.from_anchor.first[v] {
            Some(f) if f == self.fwd_edge => Side::Fwd,
            Some(_) => Side::Bwd,
            None => Side::Fwd,
        }
    }

    fn te_ok(&self, i: Cost, j: Cost) -> bool {
        self.te_diam <= self.k && self.ecc_fwd <= i && self.ecc_bwd <= j
    }

    fn member(&self, var: usize, i: Cost, j: Cost) -> bool {
        let Some(v) = self.vars[var].ecc else {
            return true;
        };
        let (a, f) = self.entry[var];
        if v + self.reach[&(a, f)] > self.k {
            return false;
        }
        let last = self.from_anchor.last[a].expect("child anchors differ from a(B)");
        let cost = self.from_anchor.dist[a].expect("reachable") + self.inst.reload(last, f) + v;
        cost <= match self.side_of(a) {
            Side::Fwd => i,
            Side::Bwd => j,
        }
    }

    fn link(&self, x: usize, y: usize) -> Cost {
        let (a1, f1) = self.entry[x];
        let (a2, f2) = self.entry[y];
        if a1 == a2 {
            return self.inst.reload(f1, f2);
        }
        let p = &self.from_child[&a1];
        self.inst.reload(f1, p.first[a2].expect("connected"))
            + p.dist[a2].expect("connected")
            + self.inst.reload(p.last[a2].expect("connected"), f2)
    }
}

/// Cactus solver bound to one instance.
#[derive(Debug, Clone)]
pub struct CactusSolver<'a> {
    inst: &'a Instance,
    tree: BlockTree,
}

impl<'a> CactusSolver<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        let tree = compute_block_tree(&inst.graph)?;
        Ok(CactusSolver { inst, tree })
    }

    pub fn block_tree(&self) -> &BlockTree {
        &self.tree
    }

    /// Bottom-up pass computing every `lambda` value at budget `k`.
    pub fn lambda_tables(&self, k: Cost) -> LambdaRun {
        let mut tables: LambdaTables = self.tree.blocks.iter().map(|_| Vec::new()).collect();
        for &b in self.tree.order.iter().rev() {
            let len = self.tree.blocks[b].len();
            let row: Vec<Option<Lambda>> = (0..len).map(|p| self.compute_lambda(&tables, b, p, k)).collect();
            let dead = row.iter().all(Option::is_none);
            tables[b] = row;
            if dead {
                return LambdaRun {
                    tables,
                    failed_block: Some(b),
                };
            }
        }
        LambdaRun {
            tables,
            failed_block: None,
        }
    }

    /// A spanning tree of diameter at most `k`, if one exists.
    pub fn decide(&self, k: Cost) -> Result<Option<SpanningForest>> {
        let Some(root) = self.tree.root_block else {
            return Ok(Some(SpanningForest::spanning_tree(&self.inst.graph, Vec::new())?));
        };
        let run = self.lambda_tables(k);
        if run.failed_block.is_some() {
            return Ok(None);
        }
        let Some(best) = run.tables[root].iter().flatten().next() else {
            return Ok(None);
        };
        let tree = SpanningForest::spanning_tree(&self.inst.graph, best.tree.clone())?;
        let d = tree.diameter(self.inst)?;
        assert!(d <= k, "cactus witness has diameter {d} > {k}");
        Ok(Some(tree))
    }

    pub fn solve(&self) -> Result<Solution> {
        let upper = self.inst.diameter_upper_bound();
        minimize_budget(upper, |k| self.decide(k))
    }

    fn context(&self, tables: &LambdaTables, b: usize, p: usize, k: Cost) -> Option<Context<'a>> {
        let inst = self.inst;
        let block = &self.tree.blocks[b];
        let mut te: Vec<EdgeId> = match block.kind {
            BlockKind::Cycle => block.edges.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &id)| id).collect(),
            BlockKind::Edge => block.edges.clone(),
        };
        let mut vars = Vec::new();
        let mut entry = Vec::new();
        let mut chains = Vec::new();
        for (ci, &c) in block.children.iter().enumerate() {
            let child = &self.tree.blocks[c];
            match child.kind {
                BlockKind::Edge => te.extend(&tables[c][0].as_ref()?.tree),
                BlockKind::Cycle => {
                    let last = child.len() - 1;
                    let mut chain = Vec::new();
                    for (q, lam) in tables[c].iter().enumerate() {
                        let Some(lam) = lam else { continue };
                        let split = split_sides(inst, child, q, &lam.tree);
                        let fv = vars.len();
                        vars.push(RVar {
                            child: ci,
                            pos: q,
                            side: Side::Fwd,
                            ecc: lam.fwd,
                            edges: split.0,
                        });
                        entry.push((child.anchor, child.edges[0]));
                        vars.push(RVar {
                            child: ci,
                            pos: q,
                            side: Side::Bwd,
                            ecc: lam.bwd,
                            edges: split.1,
                        });
                        entry.push((child.anchor, child.edges[last]));
                        chain.push((q, fv, fv + 1));
                    }
                    if chain.is_empty() {
                        return None;
                    }
                    chains.push(chain);
                }
            }
        }
        te.sort_unstable();
        let adj = adjacency(inst, &te);
        let te_diam = ForestView::new(inst, &te).diameter();
        let from_anchor = paths_from(inst, &adj, block.anchor);
        let fwd_edge = block.edges[0];
        let (mut ecc_fwd, mut ecc_bwd) = (0, 0);
        for v in 0..inst.graph.n() {
            if v == block.anchor {
                continue;
            }
            if let Some(d) = from_anchor.dist[v] {
                if from_anchor.first[v] == Some(fwd_edge) {
                    ecc_fwd = ecc_fwd.max(d);
                } else {
                    ecc_bwd = ecc_bwd.max(d);
                }
            }
        }
        let mut from_child = HashMap::new();
        let mut reach = HashMap::new();
        for &(a, f) in &entry {
            let paths = from_child.entry(a).or_insert_with(|| paths_from(inst, &adj, a));
            reach.entry((a, f)).or_insert_with(|| {
                (0..inst.graph.n())
                    .filter(|&w| w != a)
                    .filter_map(|w| Some(inst.reload(f, paths.first[w]?) + paths.dist[w]?))
                    .max()
                    .unwrap_or(0)
            });
        }
        Some(Context {
            inst,
            k,
            te,
            te_diam,
            from_anchor,
            fwd_edge,
            ecc_fwd,
            ecc_bwd,
            from_child,
            vars,
            entry,
            chains,
            reach,
        })
    }

    fn phi_of(ctx: &Context, i: Cost, j: Cost) -> Phi {
        let k = ctx.k;
        let (mut phi0, mut phi1, mut phi2, mut restrict) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for chain in &ctx.chains {
            for w in chain.windows(2) {
                let ((_, f0, b0), (_, f1, b1)) = (w[0], w[1]);
                // F_{next} => F_{prev}; Bk_{prev} => Bk_{next}.
                phi0.push((Lit::neg(f1), Lit::pos(f0)));
                phi0.push((Lit::neg(b0), Lit::pos(b1)));
                // Exactly one of F_{next}, Bk_{prev}.
                phi1.push((Lit::pos(f1), Lit::pos(b0)));
                phi1.push((Lit::neg(f1), Lit::neg(b0)));
            }
            restrict.push(Lit::pos(chain[0].1));
            restrict.push(Lit::pos(chain[chain.len() - 1].2));
        }
        let n = ctx.vars.len();
        let in_kk: Vec<bool> = (0..n).map(|x| ctx.member(x, k, k)).collect();
        for x in 0..n {
            if !ctx.member(x, i, j) {
                restrict.push(Lit::neg(x));
            }
        }
        for x in 0..n {
            let Some(vx) = ctx.vars[x].ecc else { continue };
            if !in_kk[x] {
                continue;
            }
            for y in x + 1..n {
                let Some(vy) = ctx.vars[y].ecc else { continue };
                if !in_kk[y] || ctx.vars[x].child == ctx.vars[y].child {
                    continue;
                }
                if vx + ctx.link(x, y) + vy > k {
                    phi2.push((Lit::neg(x), Lit::neg(y)));
                }
            }
        }
        Phi {
            vars: ctx.vars.clone(),
            phi0,
            phi1,
            phi2,
            restrict,
        }
    }

    /// The formulas for block `b`, dropped edge position `p` (0 for edge
    /// blocks) and side budgets `(i, j)`, given finished child tables.
    /// `None` when some child has no feasible entry.
    pub fn build_phi(&self, tables: &LambdaTables, b: usize, p: usize, k: Cost, i: Cost, j: Cost) -> Option<Phi> {
        let ctx = self.context(tables, b, p, k)?;
        Some(Self::phi_of(&ctx, i, j))
    }

    /// The tree `T^e` for block `b` and position `p`.
    pub fn base_tree(&self, tables: &LambdaTables, b: usize, p: usize) -> Option<Vec<EdgeId>> {
        Some(self.context(tables, b, p, 0)?.te)
    }

    fn sat(ctx: &Context, i: Cost, j: Cost) -> Option<Vec<bool>> {
        if !ctx.te_ok(i, j) {
            return None;
        }
        solve_2sat(&Self::phi_of(ctx, i, j).formula())
    }

    /// `lambda_B(e_p)` at budget `k`.
    pub fn compute_lambda(&self, tables: &LambdaTables, b: usize, p: usize, k: Cost) -> Option<Lambda> {
        let ctx = self.context(tables, b, p, k)?;
        Self::sat(&ctx, k, k)?;
        let block = &self.tree.blocks[b];
        let cycle = block.kind == BlockKind::Cycle;
        let fwd_trivial = cycle && p == 0;
        let bwd_trivial = !cycle || p == block.len() - 1;
        let smallest = |ok: &dyn Fn(Cost) -> bool| {
            let (mut lo, mut hi) = (0, k);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if ok(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo
        };
        let i0 = if fwd_trivial { 0 } else { smallest(&|i| Self::sat(&ctx, i, k).is_some()) };
        let j0 = if bwd_trivial { 0 } else { smallest(&|j| Self::sat(&ctx, i0, j).is_some()) };
        let model = Self::sat(&ctx, i0, j0).expect("binary search ends on a satisfiable budget");

        let mut tree = ctx.te.clone();
        for (chain, &c) in ctx.chains.iter().zip(block.children.iter().filter(|&&c| self.tree.blocks[c].kind == BlockKind::Cycle)) {
            let chosen = chain
                .iter()
                .rev()
                .find(|&&(_, f, _)| model[f])
                .expect("first forward variable is forced")
                .0;
            tree.extend(&tables[c][chosen].as_ref().expect("feasible position").tree);
        }
        tree.sort_unstable();
        let (fwd, bwd) = anchor_sides(self.inst, &tree, block);
        let fwd = if fwd_trivial { None } else { Some(fwd) };
        let bwd = if bwd_trivial { None } else { Some(bwd) };
        debug_assert!(ForestView::new(self.inst, &tree).diameter() <= k);
        debug_assert_eq!(fwd.unwrap_or(0), i0);
        debug_assert_eq!(bwd.unwrap_or(0), j0);
        Some(Lambda { tree, fwd, bwd })
    }
}

/// Anchor eccentricities on the forward and backward side of `tree`.
fn anchor_sides(inst: &Instance, tree: &[EdgeId], block: &Block) -> (Cost, Cost) {
    let adj = adjacency(inst, tree);
    let p = paths_from(inst, &adj, block.anchor);
    let (mut f, mut b) = (0, 0);
    for v in 0..inst.graph.n() {
        if v == block.anchor {
            continue;
        }
        if let Some(d) = p.dist[v] {
            if block.kind == BlockKind::Edge || p.first[v] == Some(block.edges[0]) {
                f = f.max(d);
            } else {
                b = b.max(d);
            }
        }
    }
    (f, b)
}

/// Splits a child's `lambda` tree into its forward and backward parts.
fn split_sides(inst: &Instance, block: &Block, _p: usize, tree: &[EdgeId]) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let adj = adjacency(inst, tree);
    let paths = paths_from(inst, &adj, block.anchor);
    let (mut f, mut b) = (Vec::new(), Vec::new());
    for &id in tree {
        let e = inst.graph.edge(id);
        // The endpoint farther from the anchor decides the side.
        let far = if paths.last[e.v] == Some(id) { e.v } else { e.u };
        if paths.first[far] == Some(block.edges[0]) {
            f.push(id);
        } else {
            b.push(id);
        }
    }
    (f, b)
}

/// Decision version: a witness of diameter at most `k`, or `None`.
pub fn solve_cactus_decision(inst: &Instance, k: Cost) -> Result<Option<SpanningForest>> {
    CactusSolver::new(inst)?.decide(k)
}

/// Exact optimum on a connected cactus.
pub fn solve_cactus(inst: &Instance) -> Result<Solution> {
    CactusSolver::new(inst)?.solve()
}

/// Whether a connected graph is a cactus.
pub fn is_cactus(g: &ColoredGraph) -> bool {
    compute_block_tree(g).is_ok()
}
