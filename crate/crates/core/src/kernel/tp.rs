//! Quadratic kernel for Trivially Perfect Addition.
//!
//! Every obstruction (induced P4 or C4) has two diagonals, its non-adjacent
//! pairs joined by a common neighbor. A non-edge that is a diagonal of more than
//! `k` obstructions must be added.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{canonical, intersection, Edge, Graph};
use crate::problem::{Problem, ProblemInstance};
use crate::trace::{Edit, KernelOutcome, Rule};

use super::{KernelState, RuleOutcome};

/// Number of obstructions having `{u, v}` as a diagonal, counted up to `cap`.
///
/// Returns `None` if `u == v` or `uv` is an edge.
pub fn diagonal_count(g: &Graph, u: usize, v: usize) -> Option<usize> {
    diagonal_count_capped(g, u, v, usize::MAX)
}

fn diagonal_count_capped(g: &Graph, u: usize, v: usize, cap: usize) -> Option<usize> {
    if u == v || u >= g.n() || v >= g.n() || g.has_edge(u, v) {
        return None;
    }
    let common = intersection(g.neighbors(u), g.neighbors(v));
    if common.is_empty() {
        return Some(0);
    }
    let one_side = symmetric_difference(g.neighbors(u), g.neighbors(v));
    let mut p4 = 0usize;
    let mut c4_twice = 0usize;
    for &a in &common {
        let na = g.neighbors(a);
        p4 += one_side.len() - intersection_len(&one_side, na);
        // `a` itself is in `common` but not in N(a)
        c4_twice += common.len() - 1 - intersection_len(&common, na);
        if p4 >= cap {
            return Some(p4);
        }
    }
    Some(p4 + c4_twice / 2)
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    crate::graph::intersection_size(a, b)
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// For each vertex `a`, the neighbors `u` with `N(u) ⊄ N[a]`. A pair of
/// non-adjacent neighbors of `a` lies in an obstruction through `a` exactly when
/// one of the two is listed.
fn undominated(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut mark = vec![false; n];
    (0..n)
        .map(|a| {
            for &w in g.neighbors(a) {
                mark[w] = true;
            }
            mark[a] = true;
            let out = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&u| g.neighbors(u).iter().any(|&w| !mark[w]))
                .collect();
            for &w in g.neighbors(a) {
                mark[w] = false;
            }
            mark[a] = false;
            out
        })
        .collect()
}

/// Sorted non-edges that are a diagonal of at least one obstruction.
fn diagonal_candidates(g: &Graph) -> Vec<Edge> {
    let und = undominated(g);
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &u in &und[a] {
            for &v in g.neighbors(a) {
                if v != u && !g.has_edge(u, v) {
                    out.push(canonical(u, v));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Vertices that lie in at least one induced P4 or C4.
pub fn compute_modulator(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let und = undominated(g);
    let mut in_x = vec![false; n];
    let mut mark = vec![false; n];
    for a in 0..n {
        if und[a].is_empty() {
            continue;
        }
        for &w in g.neighbors(a) {
            mark[w] = true;
        }
        mark[a] = true;
        for &u in &und[a] {
            // partners: neighbors of `a` not adjacent to `u`
            let partners: Vec<usize> = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&v| v != u && !g.has_edge(u, v))
                .collect();
            if partners.is_empty() {
                continue;
            }
            in_x[a] = true;
            in_x[u] = true;
            for v in partners {
                in_x[v] = true;
            }
            for &b in g.neighbors(u) {
                if !mark[b] {
                    in_x[b] = true;
                }
            }
        }
        for &w in g.neighbors(a) {
            mark[w] = false;
        }
        mark[a] = false;
    }
    (0..n).filter(|&v| in_x[v]).collect()
}

/// Adds, one at a time, the lexicographically smallest non-edge that is a
/// diagonal of at least `k + 1` obstructions, until none is left.
pub fn apply_diagonal_rule(st: &mut KernelState) -> RuleOutcome {
    let mut any = false;
    loop {
        if st.k < 0 {
            return st.decide(Rule::TpDiagonal, false);
        }
        let need = st.k as usize + 1;
        let found = diagonal_candidates(&st.graph)
            .into_iter()
            .find(|&(u, v)| diagonal_count_capped(&st.graph, u, v, need).unwrap() >= need);
        let Some((u, v)) = found else {
            break;
        };
        st.graph.add_edge(u, v).unwrap();
        st.k -= 1;
        st.trace.push(Rule::TpDiagonal, vec![Edit::AddEdges(vec![(u, v)])], -1);
        any = true;
    }
    if any {
        RuleOutcome::Changed
    } else {
        RuleOutcome::Unchanged
    }
}

/// `n > 2k^2 + 2k`.
pub fn exceeds_size_bound(n: usize, k: i64) -> bool {
    let k = k as i128;
    n as i128 > 2 * k * k + 2 * k
}

pub fn kernelize_tp(g: &Graph, k: i64) -> KernelOutcome {
    let mut st = KernelState::new(&ProblemInstance::new(Problem::TpAddition, g.clone(), k));
    let decided = run(&mut st);
    st.finish(decided)
}

fn run(st: &mut KernelState) -> Option<bool> {
    if let RuleOutcome::Decided(b) = st.trivial_checks() {
        return Some(b);
    }
    if let RuleOutcome::Decided(b) = apply_diagonal_rule(st) {
        return Some(b);
    }
    let x = compute_modulator(&st.graph);
    if x.len() < st.graph.n() {
        let mut remove = vec![true; st.graph.n()];
        for &v in &x {
            remove[v] = false;
        }
        st.remove_vertices(Rule::TpModulator, &remove, 0);
    }
    if exceeds_size_bound(st.graph.n(), st.k) {
        st.decide(Rule::TpSizeBound, false);
        return Some(false);
    }
    if x.is_empty() {
        st.decide(Rule::TpEmptyModulator, true);
        return Some(true);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    const P4: &[Edge] = &[(0, 1), (1, 2), (2, 3)];

    fn k23() -> Graph {
        // sides {0,1} and {2,3,4}
        graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    }

    #[test]
    fn count_examples() {
        let p4 = graph(4, P4);
        assert_eq!(diagonal_count(&p4, 0, 2), Some(1));
        assert_eq!(diagonal_count(&p4, 0, 3), Some(0));
        assert_eq!(diagonal_count(&p4, 0, 1), None);
        assert_eq!(diagonal_count(&k23(), 0, 1), Some(3));
    }

    #[test]
    fn diagonal_rule_examples() {
        let inst = |g: Graph, k| KernelState::new(&ProblemInstance::new(Problem::TpAddition, g, k));
        let mut st = inst(graph(4, P4), 0);
        assert_eq!(apply_diagonal_rule(&mut st), RuleOutcome::Decided(false));
        assert_eq!(st.k, -1);
        let mut st = inst(graph(4, P4), 1);
        assert_eq!(apply_diagonal_rule(&mut st), RuleOutcome::Unchanged);
        let mut st = inst(k23(), 2);
        assert_eq!(apply_diagonal_rule(&mut st), RuleOutcome::Changed);
        assert_eq!(st.trace.steps[0].edits, vec![Edit::AddEdges(vec![(0, 1)])]);
    }

    #[test]
    fn modulator_examples() {
        let k4: Graph = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(compute_modulator(&k4).is_empty());
        let p4_k3 = graph(7, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (4, 6)]);
        assert_eq!(compute_modulator(&p4_k3), vec![0, 1, 2, 3]);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(compute_modulator(&c4), vec![0, 1, 2, 3]);
    }

    #[test]
    fn pipeline_examples() {
        let out = kernelize_tp(&graph(4, P4), 1);
        assert_eq!(out.reduced().unwrap().graph, graph(4, P4));
        let p4_k3 = graph(7, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (4, 6)]);
        let out = kernelize_tp(&p4_k3, 1);
        assert_eq!(out.reduced().unwrap().graph, graph(4, P4));
        assert_eq!(out.reduced().unwrap().k, 1);
        let k4: Graph = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(kernelize_tp(&k4, 0).decided(), Some(true));
        assert_eq!(kernelize_tp(&graph(4, P4), 0).decided(), Some(false));
    }
}
