//! 2-SAT via the implication graph and strongly connected components.

use std::fmt;

/// A literal: variable index plus polarity (`true` for the positive literal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    #[must_use]
    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

/// Conjunction of two-literal clauses. A unit clause is stored as `(l, l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    num_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        TwoSatFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        assert!(a.var < self.num_vars && b.var < self.num_vars, "literal out of range");
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    /// `a => b`, stored as `!a or b`.
    pub fn add_implication(&mut self, a: Lit, b: Lit) {
        self.add_clause(a.negate(), b);
    }

    pub fn extend(&mut self, other: &TwoSatFormula) {
        assert!(other.num_vars <= self.num_vars);
        self.clauses.extend_from_slice(&other.clauses);
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }
}

/// Satisfying assignment, or `None` when the formula is unsatisfiable.
pub fn solve_2sat(formula: &TwoSatFormula) -> Option<Vec<bool>> {
    solve_2sat_counted(formula).0
}

/// As [`solve_2sat`], also returning the number of elementary steps
/// (node and arc visits) spent, which is linear in the formula size.
pub fn solve_2sat_counted(formula: &TwoSatFormula) -> (Option<Vec<bool>>, usize) {
    let nodes = 2 * formula.num_vars;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(a, b) in &formula.clauses {
        adj[a.negate().node()].push(b.node());
        if a != b {
            adj[b.negate().node()].push(a.node());
        }
    }
    let (comp, steps) = tarjan_scc(&adj);
    let mut assignment = Vec::with_capacity(formula.num_vars);
    for v in 0..formula.num_vars {
        let (p, n) = (comp[2 * v], comp[2 * v + 1]);
        if p == n {
            return (None, steps);
        }
        // Tarjan numbers components in reverse topological order, so the
        // literal whose component comes later topologically has the smaller id.
        assignment.push(p < n);
    }
    assert!(
        formula.is_satisfied_by(&assignment),
        "2-SAT assignment failed verification"
    );
    (Some(assignment), steps + formula.clauses.len())
}

/// Iterative Tarjan; returns component ids in reverse topological order.
fn tarjan_scc(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    let mut steps = 0;
    for s in 0..n {
        if index[s] != UNSEEN {
            continue;
        }
        call.push((s, 0));
        index[s] = counter;
        low[s] = counter;
        counter += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            steps += 1;
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_y() {
        let mut f = TwoSatFormula::new(2);
        f.add_clause(Lit::pos(0), Lit::pos(1));
        f.add_clause(Lit::neg(0), Lit::pos(1));
        let a = solve_2sat(&f).unwrap();
        assert!(a[1]);
    }

    #[test]
    fn contradiction() {
        let mut f = TwoSatFormula::new(1);
        f.add_unit(Lit::pos(0));
        f.add_unit(Lit::neg(0));
        assert_eq!(solve_2sat(&f), None);
    }

    #[test]
    fn empty_formula() {
        let f = TwoSatFormula::new(3);
        assert_eq!(solve_2sat(&f).map(|a| a.len()), Some(3));
    }

    #[test]
    fn implication_chain() {
        // x0 => x1 => x2 => !x0 forces x0 false.
        let mut f = TwoSatFormula::new(3);
        f.add_implication(Lit::pos(0), Lit::pos(1));
        f.add_implication(Lit::pos(1), Lit::pos(2));
        f.add_implication(Lit::pos(2), Lit::neg(0));
        let a = solve_2sat(&f).unwrap();
        assert!(!a[0]);
        f.add_unit(Lit::pos(0));
        assert_eq!(solve_2sat(&f), None);
    }
}
