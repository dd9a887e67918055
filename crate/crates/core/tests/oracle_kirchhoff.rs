//! Spanning-tree enumeration checked against Kirchhoff's spanning-tree count.

use reload_core::generators::{gen_random_cactus, gen_random_connected};
use reload_core::oracle::{enumerate_spanning_trees, for_each_spanning_tree};
use reload_core::ColoredGraph;
use std::ops::ControlFlow;

/// Determinant of a Laplacian minor by fraction-free elimination.
fn kirchhoff(g: &ColoredGraph) -> i128 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let mut a = vec![vec![0i128; n - 1]; n - 1];
    for e in g.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x > 0 {
                a[x - 1][x - 1] += 1;
                if y > 0 {
                    a[x - 1][y - 1] -= 1;
                }
            }
        }
    }
    let m = n - 1;
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

fn count(g: &ColoredGraph) -> i128 {
    let mut c = 0;
    for_each_spanning_tree(g, |_| {
        c += 1;
        ControlFlow::Continue(())
    })
    .unwrap();
    c
}

#[test]
fn random_graphs_match_kirchhoff_count() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 8);
        let g = gen_random_connected(n, 2 * n, 5, 2, seed);
        assert_eq!(count(&g), kirchhoff(&g), "seed {seed}");
    }
}

#[test]
fn cacti_match_kirchhoff_count() {
    for seed in 0..40 {
        let g = gen_random_cactus(14, 0.5, 2, seed);
        assert_eq!(count(&g), kirchhoff(&g), "seed {seed}");
    }
}

#[test]
fn complete_graph_k5() {
    let mut g = ColoredGraph::new(5);
    for a in 0..5 {
        for b in a + 1..5 {
            g.add_edge(a, b, 0).unwrap();
        }
    }
    assert_eq!(kirchhoff(&g), 125);
    let trees = enumerate_spanning_trees(&g, 1000).unwrap();
    assert_eq!(trees.len(), 125);
    assert!(trees.iter().all(|t| t.is_spanning_tree()));
}
