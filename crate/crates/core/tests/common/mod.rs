//! Helpers shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reload_core::generators::CnfFormula;
use reload_core::twdp::{LocalEdge, TPair, BOT, NO_COLOR};
use reload_core::twosat::{Lit, TwoSatFormula};
use reload_core::{ColoredGraph, Cost, Instance, ReloadCostTable, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Satisfiability by trying every assignment.
pub fn cnf_truth_table(f: &CnfFormula) -> bool {
    (0u64..1 << f.num_vars).any(|bits| {
        let a: Vec<bool> = (0..f.num_vars).map(|i| bits >> i & 1 == 1).collect();
        f.is_satisfied_by(&a)
    })
}

pub fn twosat_truth_table(f: &TwoSatFormula) -> bool {
    (0u64..1 << f.num_vars()).any(|bits| {
        let a: Vec<bool> = (0..f.num_vars()).map(|i| bits >> i & 1 == 1).collect();
        f.is_satisfied_by(&a)
    })
}

pub fn random_2sat(seed: u64, max_vars: usize) -> TwoSatFormula {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vars);
    let m = r.gen_range(0..=3 * n);
    let mut f = TwoSatFormula::new(n);
    let lit = |r: &mut ChaCha8Rng| Lit {
        var: r.gen_range(0..n),
        positive: r.gen_bool(0.5),
    };
    for _ in 0..m {
        let (a, b) = (lit(&mut r), lit(&mut r));
        f.add_clause(a, b);
    }
    f
}

/// Whether the multiset splits into two halves of equal sum.
pub fn partitionable(items: &[Cost]) -> bool {
    let total: Cost = items.iter().sum();
    total.is_multiple_of(2)
        && (0u32..1 << items.len()).any(|mask| {
            let s: Cost = (0..items.len()).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).sum();
            2 * s == total
        })
}

/// Whether the items fit into `bins` bins of the given capacity.
pub fn packable(items: &[Cost], capacity: Cost, bins: usize) -> bool {
    fn go(items: &[Cost], load: &mut Vec<Cost>, cap: Cost) -> bool {
        let Some((&a, rest)) = items.split_first() else {
            return true;
        };
        for b in 0..load.len() {
            if load[b] + a <= cap && !load[..b].contains(&load[b]) {
                load[b] += a;
                let ok = go(rest, load, cap);
                load[b] -= a;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(items, &mut vec![0; bins], capacity)
}

/// A random tree on `n` vertices with colors below `colors`.
pub fn random_tree(r: &mut ChaCha8Rng, n: usize, colors: usize) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    for v in 1..n {
        let u = r.gen_range(0..v);
        g.add_edge(u, v, r.gen_range(0..colors)).unwrap();
    }
    g
}

/// Per-vertex (cost, depth) from `s` inside the forest given by `keep`.
pub fn costs_from(inst: &Instance, keep: &[bool], s: Vertex) -> Vec<Option<(Cost, usize)>> {
    let g = &inst.graph;
    let mut out = vec![None; g.n()];
    out[s] = Some((0, 0));
    let mut stack = vec![(s, usize::MAX)];
    while let Some((z, via)) = stack.pop() {
        let (c, d) = out[z].unwrap();
        for &(y, id) in g.adj(z) {
            if id == via || !keep[id] {
                continue;
            }
            let step = if via == usize::MAX { 0 } else { inst.reload(via, id) };
            out[y] = Some((c + step, d + 1));
            stack.push((y, id));
        }
    }
    out
}

/// A random tree split into two edge-disjoint forests that meet only at
/// terminals, with both sides turned into exact t-pairs.
pub struct TwoForests {
    pub inst: Instance,
    pub terminals: Vec<Vertex>,
    /// Local vertex `i` of side `s` is real vertex `locals[s][i]`.
    pub locals: [Vec<Vertex>; 2],
    pub side_of_edge: Vec<usize>,
    pub pairs: [TPair; 2],
}

pub fn two_forests(seed: u64) -> TwoForests {
    let mut r = rng(seed);
    let n = r.gen_range(2..=9);
    let colors = r.gen_range(1..=4);
    let g = random_tree(&mut r, n, colors);
    let mut costs = ReloadCostTable::new(colors);
    for a in 0..colors {
        for b in a + 1..colors {
            costs.set(a, b, r.gen_range(0..=6));
        }
    }
    let inst = Instance::new(g, costs, None).unwrap();
    let g = &inst.graph;
    let side_of_edge: Vec<usize> = (0..g.m()).map(|_| r.gen_range(0..2)).collect();
    let mut terminal = vec![false; n];
    for v in 0..n {
        let sides: Vec<usize> = g.adj(v).iter().map(|&(_, id)| side_of_edge[id]).collect();
        terminal[v] = sides.contains(&0) && sides.contains(&1) || r.gen_bool(0.3);
    }
    if !terminal.contains(&true) {
        terminal[0] = true;
    }
    let mut terminals: Vec<Vertex> = (0..n).filter(|&v| terminal[v]).collect();
    terminals.shuffle(&mut r);
    let w = terminals.len();
    let mut locals: [Vec<Vertex>; 2] = [terminals.clone(), terminals.clone()];
    for v in 0..n {
        if !terminal[v] {
            let s = side_of_edge[g.adj(v)[0].1];
            locals[s].push(v);
        }
    }
    let pairs = [0, 1].map(|s| {
        let keep: Vec<bool> = side_of_edge.iter().map(|&x| x == s).collect();
        let local = &locals[s];
        let idx = |v: Vertex| local.iter().position(|&x| x == v).unwrap();
        let from: Vec<_> = terminals.iter().map(|&t| costs_from(&inst, &keep, t)).collect();
        let alpha = local
            .iter()
            .map(|&z| (0..w).map(|x| from[x][z].map_or(BOT, |c| c.0)).collect())
            .collect();
        let edges = (0..g.m())
            .filter(|&id| keep[id])
            .map(|id| {
                let e = g.edge(id);
                if terminal[e.u] || terminal[e.v] {
                    LocalEdge { a: idx(e.u), b: idx(e.v), color: e.color, alpha: vec![] }
                } else {
                    let alpha = (0..w)
                        .map(|x| match (from[x][e.u], from[x][e.v]) {
                            (Some(a), Some(b)) => if a.1 > b.1 { a.0 } else { b.0 },
                            _ => BOT,
                        })
                        .collect();
                    LocalEdge { a: idx(e.u), b: idx(e.v), color: NO_COLOR, alpha }
                }
            })
            .collect();
        TPair { w, alpha, edges }
    });
    TwoForests {
        inst,
        terminals,
        locals,
        side_of_edge,
        pairs,
    }
}

/// Compares a fused pair with direct path costs on the whole tree.
pub fn check_fusion(tf: &TwoForests, fused: &TPair) -> Result<(), String> {
    let g = &tf.inst.graph;
    let keep = vec![true; g.m()];
    let w = tf.terminals.len();
    // Union numbering: side 0 locals, then side 1 anonymous locals.
    let mut real: Vec<Vertex> = tf.locals[0].clone();
    real.extend(&tf.locals[1][w..]);
    for (x, &t) in tf.terminals.iter().enumerate() {
        let d = costs_from(&tf.inst, &keep, t);
        for (z, &v) in real.iter().enumerate() {
            let want = d[v].map_or(BOT, |c| c.0);
            if fused.alpha[z][x] != want {
                return Err(format!("terminal {t} to vertex {v}: fused {} direct {want}", fused.alpha[z][x]));
            }
        }
        for e in fused.edges.iter().filter(|e| !e.alpha.is_empty()) {
            let (a, b) = (real[e.a], real[e.b]);
            let (da, db) = (d[a].unwrap(), d[b].unwrap());
            let want = if da.1 > db.1 { da.0 } else { db.0 };
            if e.alpha[x] != want {
                return Err(format!("terminal {t} to edge {a}-{b}: fused {} direct {want}", e.alpha[x]));
            }
        }
    }
    Ok(())
}

/// A random forest with a random good set.
pub fn forest_and_good_set(seed: u64) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=16);
    let mut edges = Vec::new();
    for v in 1..n {
        if r.gen_bool(0.85) {
            edges.push((r.gen_range(0..v), v));
        }
    }
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let root = find(c, c[x]);
            c[x] = root;
        }
        c[x]
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra] = rb;
    }
    let mut s: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.2)).collect();
    for v in 0..n {
        let root = find(&mut comp, v);
        if !s.iter().any(|&x| find(&mut comp, x) == root) {
            s.push(v);
        }
    }
    s.sort_unstable();
    (n, edges, s)
}
