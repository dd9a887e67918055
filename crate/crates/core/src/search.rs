//! Optimum search over a monotone decision procedure.

use crate::error::Result;
use crate::graph::{Cost, SpanningForest};

/// Optimum found by a decision-based solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub opt: Cost,
    pub witness: SpanningForest,
    /// Number of decision calls made.
    pub decisions: usize,
}

/// Smallest `k` in `0..=upper` for which `decide(k)` yields a witness,
/// assuming monotonicity and that `decide(upper)` succeeds.
///
/// Tries 0, 1, 2, 4, ... until a witness appears (capped at `upper`), then
/// binary-searches the last gap.
pub fn minimize_budget<F>(upper: Cost, mut decide: F) -> Result<Solution>
where
    F: FnMut(Cost) -> Result<Option<SpanningForest>>,
{
    let mut decisions = 0;
    let mut call = |k: Cost, decisions: &mut usize| {
        *decisions += 1;
        decide(k)
    };
    let mut below: Option<Cost> = None;
    let mut k = 0;
    let (mut hi, mut best) = loop {
        if let Some(t) = call(k, &mut decisions)? {
            break (k, t);
        }
        if k >= upper {
            panic!("decision procedure rejected the upper bound {upper}");
        }
        below = Some(k);
        k = if k == 0 { 1 } else { (2 * k).min(upper) };
    };
    let mut lo = below.map_or(0, |b| b + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match call(mid, &mut decisions)? {
            Some(t) => {
                hi = mid;
                best = t;
            }
            None => lo = mid + 1,
        }
    }
    Ok(Solution {
        opt: hi,
        witness: best,
        decisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    #[test]
    fn finds_threshold() {
        let g = ColoredGraph::new(1);
        let t = SpanningForest::spanning_tree(&g, vec![]).unwrap();
        for target in [0u64, 1, 2, 3, 5, 17, 64, 100] {
            let s = minimize_budget(100, |k| Ok((k >= target).then(|| t.clone()))).unwrap();
            assert_eq!(s.opt, target);
            assert!(s.decisions <= 2 * 8 + 2);
        }
    }
}
