//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use reload_core::cactus::{solve_cactus, solve_cactus_decision, CactusSolver};
use reload_core::decomposition::heuristic_decomposition;
use reload_core::generators::*;
use reload_core::oracle::{decide_bruteforce, solve_bruteforce};
use reload_core::twdp::{fuse, reduce, FptConfig, FptSolver, Image};
use reload_core::twosat::{solve_2sat, Lit};
use reload_core::{Cost, Instance};

const MAX_TREES: u64 = 20_000_000;
const MAX_NODES: u64 = 200_000_000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fpt(inst: &Instance) -> FptSolver<'_> {
    let cfg = FptConfig {
        verify_pairs: true,
        ..FptConfig::default()
    };
    FptSolver::new(inst, &heuristic_decomposition(&inst.graph), cfg).unwrap()
}

fn cactus_suite() -> Vec<Instance> {
    (0..200u64)
        .map(|seed| {
            let mut r = rng(seed);
            let n = r.gen_range(1..=12);
            let colors = r.gen_range(1..=5);
            let g = gen_random_cactus(n, 0.6, colors, seed);
            Instance::new(g, gen_random_costs(colors, 50, seed), None).unwrap()
        })
        .collect()
}

fn graph_suite() -> Vec<Instance> {
    (0..100u64)
        .map(|seed| {
            let mut r = rng(1000 + seed);
            let n = r.gen_range(2..=10);
            let m = r.gen_range(n - 1..=(2 * n).min(n * (n - 1) / 2));
            let colors = r.gen_range(1..=4);
            let g = gen_random_connected(n, m, 4, colors, seed);
            Instance::new(g, gen_random_costs(colors, 12, seed), None).unwrap()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (seed, inst) in cactus_suite().iter().enumerate() {
        let bf = solve_bruteforce(inst, MAX_TREES).map_err(|e| e.to_string())?;
        let ca = solve_cactus(inst).map_err(|e| e.to_string())?;
        ensure(ca.opt == bf.opt, || format!("seed {seed}: cactus {} brute force {}", ca.opt, bf.opt))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("200 cacti in {t:.1?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut largest = 0;
    for (seed, inst) in graph_suite().iter().enumerate() {
        let bf = solve_bruteforce(inst, MAX_TREES).map_err(|e| e.to_string())?;
        let s = fpt(inst);
        let sol = s.solve().map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(sol.opt == bf.opt, || format!("seed {seed}: dp {} brute force {}", sol.opt, bf.opt))?;
        let (_, stats) = s.decide_with_stats(sol.opt).map_err(|e| e.to_string())?;
        largest = largest.max(stats.max_table);
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!("100 graphs in {t:.1?}, largest table {largest}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for (seed, inst) in cactus_suite().iter().enumerate() {
        let ca = solve_cactus(inst).map_err(|e| e.to_string())?;
        let dp = fpt(inst).solve().map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(ca.opt == dp.opt, || format!("seed {seed}: cactus {} dp {}", ca.opt, dp.opt))?;
    }
    Ok(format!("200 cacti in {:.1?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    let shape = gen_outerplanar_from_3sat(&CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]])).unwrap();
    ensure(shape.graph.n() == 4 && shape.graph.m() == 5, || "single-clause shape".into())?;
    let (mut sat, mut unsat) = (0, 0);
    for seed in 0..50u64 {
        let mut r = rng(4000 + seed);
        let vars = r.gen_range(3..=6);
        let f = if seed % 2 == 0 {
            // Every sign pattern over three variables: unsatisfiable.
            let mut pick: Vec<usize> = (0..vars).collect();
            pick.shuffle(&mut r);
            let clauses = (0..8u32)
                .map(|bits| (0..3).map(|i| Lit { var: pick[i], positive: bits >> i & 1 == 1 }).collect())
                .collect();
            CnfFormula::new(vars, clauses)
        } else {
            let clauses = r.gen_range(1..=8);
            gen_random_cnf(vars, clauses, &[3], seed)
        };
        let inst = gen_outerplanar_from_3sat(&f).unwrap();
        let want = cnf_truth_table(&f);
        let got = decide_bruteforce(&inst, 9, MAX_NODES).map_err(|e| e.to_string())?.is_some();
        ensure(want == got, || format!("seed {seed}: satisfiable {want}, tree {got}"))?;
        if want {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!("50 formulas ({sat} satisfiable, {unsat} not)"))
}

/// `(a or b)(a or not b)(not a or c)(not c or d)(not c or not d)` with random
/// polarities and names, padded with random clauses that keep every
/// variable at three occurrences or fewer.
fn forced_contradiction(r: &mut impl Rng) -> CnfFormula {
    let vars = r.gen_range(4..=5);
    let mut names: Vec<usize> = (0..vars).collect();
    names.shuffle(r);
    let flip: Vec<bool> = (0..vars).map(|_| r.gen_bool(0.5)).collect();
    let lit = |v: usize, positive: bool| Lit { var: names[v], positive: positive != flip[v] };
    let mut clauses = vec![
        vec![lit(0, true), lit(1, true)],
        vec![lit(0, true), lit(1, false)],
        vec![lit(0, false), lit(2, true)],
        vec![lit(2, false), lit(3, true)],
        vec![lit(2, false), lit(3, false)],
    ];
    for _ in 0..r.gen_range(0..=3) {
        let len = r.gen_range(2..=3);
        let mut pick: Vec<usize> = (0..vars).collect();
        pick.shuffle(r);
        let c: Vec<Lit> = pick[..len].iter().map(|&v| Lit { var: v, positive: r.gen_bool(0.5) }).collect();
        let mut f = CnfFormula::new(vars, clauses.clone());
        f.clauses.push(c.clone());
        if f.occurrences().iter().all(|&(p, n)| p + n <= 3) {
            clauses.push(c);
        }
    }
    CnfFormula::new(vars, clauses)
}

fn criterion_5() -> Outcome {
    let fig = CnfFormula::from_dimacs_clauses(4, &[&[1, -2, 3], &[-1, -4], &[-3, -4], &[-1, 2, 3], &[2, 4]]);
    let fig_inst = gen_degree3_from_3sat(&normalize_3sat_three_occurrences(&fig).unwrap()).unwrap();
    ensure(fpt(&fig_inst).decide(0).map_err(|e| e.to_string())?.is_some(), || "example formula: No at 0".into())?;
    let (mut seed, mut sat, mut unsat) = (0u64, 0, 0);
    while sat + unsat < 30 {
        seed += 1;
        ensure(seed < 100_000, || format!("only {sat} + {unsat} formulas found"))?;
        let mut r = rng(5000 + seed);
        let vars = r.gen_range(2..=5);
        let clauses = r.gen_range(3..=8);
        let f = if seed % 2 == 0 {
            gen_random_cnf(vars, clauses, &[2, 2, 3], seed)
        } else {
            forced_contradiction(&mut r)
        };
        let Ok(norm) = normalize_3sat_three_occurrences(&f) else { continue };
        let want = cnf_truth_table(&f);
        if norm.num_vars == 0 || (want && sat == 15) || (!want && unsat == 15) {
            continue;
        }
        let inst = gen_degree3_from_3sat(&norm).unwrap();
        ensure(inst.graph.max_degree() <= 3, || format!("seed {seed}: degree above 3"))?;
        ensure(inst.costs.num_colors() == 9, || format!("seed {seed}: color count"))?;
        ensure(inst.costs.max_entry() <= 1, || format!("seed {seed}: cost above 1"))?;
        ensure(want == cnf_truth_table(&norm), || format!("seed {seed}: normalization changed satisfiability"))?;
        let got = fpt(&inst).decide(0).map_err(|e| e.to_string())?.is_some();
        ensure(want == got, || format!("seed {seed}: satisfiable {want}, tree {got}"))?;
        if want {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!("30 formulas ({sat} satisfiable, {unsat} not)"))
}

fn criterion_6() -> Outcome {
    let mut yes = 0;
    for seed in 0..30u64 {
        let mut r = rng(6000 + seed);
        let n = r.gen_range(1..=6);
        let items: Vec<Cost> = loop {
            let it: Vec<Cost> = (0..n).map(|_| r.gen_range(1..=6)).collect();
            if it.iter().sum::<Cost>() <= 24 {
                break it;
            }
        };
        let p = PartitionInstance::new(items.clone()).unwrap();
        let inst = gen_planar_from_partition(&p).unwrap();
        ensure(inst.graph.max_degree() <= 3, || format!("{items:?}: degree above 3"))?;
        let width = heuristic_decomposition(&inst.graph).width();
        ensure(width <= 4, || format!("{items:?}: heuristic width {width}"))?;
        let want = partitionable(&items);
        let k = inst.budget.unwrap();
        let got = fpt(&inst).decide(k).map_err(|e| e.to_string())?.is_some();
        ensure(want == got, || format!("{items:?}: partitionable {want}, tree {got}"))?;
        yes += usize::from(want);
    }
    Ok(format!("30 multisets ({yes} partitionable)"))
}

fn criterion_7() -> Outcome {
    let mut mismatches = Vec::new();
    let mut cases: Vec<(Vec<Cost>, Cost, usize)> = vec![(vec![1, 1], 1, 2), (vec![2, 2, 2], 2, 2)];
    let (mut yes, mut no, mut seed) = (1, 1, 0u64);
    while yes + no < 20 {
        seed += 1;
        let mut r = rng(7000 + seed);
        let n = r.gen_range(1..=5);
        let bins = r.gen_range(2..=3);
        let items: Vec<Cost> = (0..n).map(|_| r.gen_range(1..=4)).collect();
        let total: Cost = items.iter().sum();
        let lo = *items.iter().max().unwrap();
        let cap = r.gen_range(lo..=lo.max(total.div_ceil(bins as Cost) + 1));
        let want = packable(&items, cap, bins);
        if (want && yes == 10) || (!want && no == 10) {
            continue;
        }
        if want {
            yes += 1;
        } else {
            no += 1;
        }
        cases.push((items, cap, bins));
    }
    for (items, cap, bins) in cases {
        let p = BinPackingInstance::new(items.clone(), cap, bins).unwrap();
        let inst = gen_from_unary_binpacking(&p).unwrap();
        ensure(inst.graph.max_degree() == 2 * bins, || format!("{items:?}: degree"))?;
        ensure(inst.costs.max_entry() <= 2 * cap + 1, || format!("{items:?}: cost bound"))?;
        let want = packable(&items, cap, bins);
        let got = decide_bruteforce(&inst, 2 * cap, MAX_NODES).map_err(|e| e.to_string())?.is_some();
        if want != got {
            mismatches.push(format!("{items:?} B={cap} k={bins}: packable {want}, tree {got}"));
        }
    }
    ensure(mismatches.is_empty(), || format!("{} of 20 disagree, first: {}", mismatches.len(), mismatches[0]))?;
    Ok("20 instances".into())
}

fn criterion_8() -> Outcome {
    // Pair invariants are verified on every insertion while running the
    // dynamic program over part of the random graph suite.
    for inst in graph_suite().iter().take(25) {
        fpt(inst).solve().map_err(|e| e.to_string())?;
    }
    for seed in 0..500u64 {
        let (n, edges, s) = forest_and_good_set(seed);
        let red = reduce(n, &edges, &s).map_err(|e| e.to_string())?;
        let s2: Vec<usize> = s.iter().map(|&v| red.vertex_map[v].unwrap()).collect();
        let again = reduce(red.n, &red.edges, &s2).map_err(|e| e.to_string())?;
        ensure(again.n == red.n && again.edges == red.edges, || format!("seed {seed}: reduce not idempotent"))?;
        ensure(
            (0..red.n).all(|v| again.phi_vertex[v] == Image::Vertex(v)),
            || format!("seed {seed}: second reduce moved a vertex"),
        )?;
        // Direct K_z: survivors reachable from z without crossing another survivor.
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for z in 0..n {
            let mut k_z = Vec::new();
            let mut seen = vec![false; n];
            let mut stack = vec![z];
            seen[z] = true;
            while let Some(y) = stack.pop() {
                if red.vertex_map[y].is_some() {
                    k_z.push(red.vertex_map[y].unwrap());
                    continue;
                }
                for &x in &adj[y] {
                    if !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
            k_z.sort_unstable();
            let ok = match red.phi_vertex[z] {
                Image::Vertex(x) => k_z == [x],
                Image::Edge(f) => {
                    let (a, b) = red.edges[f];
                    k_z == [a.min(b), a.max(b)]
                }
            };
            ensure(ok, || format!("seed {seed}: vertex {z} maps to {:?}, K_z {k_z:?}", red.phi_vertex[z]))?;
        }
    }
    for seed in 0..500u64 {
        let tf = two_forests(seed);
        let fused = fuse(&tf.pairs[0], &tf.pairs[1], &tf.inst.costs).map_err(|e| e.to_string())?;
        check_fusion(&tf, &fused).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    for seed in 0..500u64 {
        let f = random_2sat(seed, 12);
        let got = solve_2sat(&f);
        ensure(got.is_some() == twosat_truth_table(&f), || format!("seed {seed}: 2-SAT verdict"))?;
        if let Some(a) = got {
            ensure(f.is_satisfied_by(&a), || format!("seed {seed}: bad model"))?;
        }
    }
    Ok("pair checks, 500 reductions, 500 fusions, 500 2-SAT formulas".into())
}

fn monotone(answers: &[bool]) -> bool {
    answers.windows(2).all(|w| !w[0] || w[1])
}

fn criterion_9() -> Outcome {
    let cacti = cactus_suite();
    let graphs = graph_suite();
    for i in 0..25 {
        let inst = &cacti[i * 8];
        let s = CactusSolver::new(inst).unwrap();
        let d = fpt(inst);
        let top = solve_cactus(inst).unwrap().opt + 3;
        let a: Vec<bool> = (0..=top).map(|k| s.decide(k).unwrap().is_some()).collect();
        let b: Vec<bool> = (0..=top).map(|k| d.decide(k).unwrap().is_some()).collect();
        ensure(monotone(&a) && monotone(&b), || format!("cactus {i}: not monotone"))?;
        ensure(a == b, || format!("cactus {i}: solvers disagree"))?;
        ensure(solve_cactus_decision(inst, top).unwrap().is_some(), || format!("cactus {i}"))?;
    }
    for i in 0..25 {
        let inst = &graphs[i * 4];
        let d = fpt(inst);
        let top = d.solve().unwrap().opt + 3;
        let b: Vec<bool> = (0..=top).map(|k| d.decide(k).unwrap().is_some()).collect();
        ensure(monotone(&b), || format!("graph {i}: not monotone"))?;
    }
    Ok("50 instances swept".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    // Only run under `cargo test`, not when listing tests.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 9] = [
        ("cactus solver matches brute force", criterion_1),
        ("dynamic program matches brute force", criterion_2),
        ("cactus solver matches dynamic program", criterion_3),
        ("outerplanar 3-SAT reduction", criterion_4),
        ("degree-3 3-SAT reduction", criterion_5),
        ("partition reduction", criterion_6),
        ("bin packing reduction", criterion_7),
        ("structural invariants", criterion_8),
        ("decision monotonicity", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let tag = format!("criterion_{}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| tag.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
