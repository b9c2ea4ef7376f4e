//! Linear kernel for Starforest Deletion.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{canonical, Edge, Graph};
use crate::problem::{Problem, ProblemInstance};
use crate::trace::{Edit, KernelOutcome, Rule};

use super::{KernelState, RuleOutcome};

/// Removes every connected component with at most two vertices.
pub fn apply_cleanup_rule(st: &mut KernelState) -> RuleOutcome {
    let g = &st.graph;
    let mut remove = vec![false; g.n()];
    let mut any = false;
    for v in 0..g.n() {
        let small = match g.degree(v) {
            0 => true,
            1 => g.degree(g.neighbors(v)[0]) == 1,
            _ => false,
        };
        if small {
            remove[v] = true;
            any = true;
        }
    }
    if !any {
        return RuleOutcome::Unchanged;
    }
    st.remove_vertices(Rule::StarCleanup, &remove, 0);
    RuleOutcome::Changed
}

/// Vertices adjacent to a degree-one vertex, as a flag per vertex.
pub fn center_candidates(g: &Graph) -> Vec<bool> {
    let mut c = vec![false; g.n()];
    for v in 0..g.n() {
        if g.degree(v) == 1 {
            c[g.neighbors(v)[0]] = true;
        }
    }
    c
}

fn delete_edges(st: &mut KernelState, rule: Rule, edges: Vec<Edge>) -> bool {
    if edges.is_empty() {
        return false;
    }
    for &(u, v) in &edges {
        st.graph.remove_edge(u, v).unwrap();
    }
    let cost = edges.len() as i64;
    st.k -= cost;
    st.trace.push(rule, vec![Edit::DeleteEdges(edges)], -cost);
    true
}

/// Deletes the edges inside the candidate center set C (b), then for each
/// vertex outside C keeps only the edge to its smallest C-neighbor (a).
pub fn apply_center_label_rules(st: &mut KernelState) -> RuleOutcome {
    let c = center_candidates(&st.graph);
    let g = &st.graph;
    let inside: Vec<Edge> = g.edges().filter(|&(u, v)| c[u] && c[v]).collect();
    let mut outside: Vec<Edge> = Vec::new();
    for v in (0..g.n()).filter(|&v| !c[v]) {
        let mut cs = g.neighbors(v).iter().copied().filter(|&w| c[w]);
        if cs.next().is_some() {
            outside.extend(cs.map(|w| canonical(v, w)));
        }
    }
    outside.sort_unstable();
    let b = delete_edges(st, Rule::StarCenterEdges, inside);
    let a = delete_edges(st, Rule::StarLeafEdges, outside);
    if st.k < 0 {
        return st.decide(Rule::NegativeBudget, false);
    }
    if a || b {
        RuleOutcome::Changed
    } else {
        RuleOutcome::Unchanged
    }
}

/// Merges the candidate centers into one vertex and keeps only the `k + 2`
/// smallest degree-one vertices.
pub fn apply_center_reduction(st: &mut KernelState) -> RuleOutcome {
    let c = center_candidates(&st.graph);
    let centers: Vec<usize> = (0..c.len()).filter(|&v| c[v]).collect();
    let mut any = false;
    if centers.len() >= 2 {
        let (g, _) = st
            .graph
            .merge_vertices(&centers)
            .expect("center labeling leaves C independent with private neighbors");
        st.graph = g;
        st.trace.push(Rule::StarMergeCenters, vec![Edit::Merge(centers)], 0);
        any = true;
    }
    let keep = (st.k.max(0) + 2) as usize;
    let leaves: Vec<usize> = (0..st.graph.n()).filter(|&v| st.graph.degree(v) == 1).collect();
    if leaves.len() > keep {
        let mut remove = vec![false; st.graph.n()];
        for &v in &leaves[keep..] {
            remove[v] = true;
        }
        st.remove_vertices(Rule::StarTrimLeaves, &remove, 0);
        any = true;
    }
    if any {
        RuleOutcome::Changed
    } else {
        RuleOutcome::Unchanged
    }
}

/// `n > 4k + 3`.
pub fn exceeds_size_bound(n: usize, k: i64) -> bool {
    n as i128 > 4 * k as i128 + 3
}

pub fn kernelize_star(g: &Graph, k: i64) -> KernelOutcome {
    let mut st = KernelState::new(&ProblemInstance::new(Problem::StarDeletion, g.clone(), k));
    let decided = run(&mut st);
    st.finish(decided)
}

fn run(st: &mut KernelState) -> Option<bool> {
    if let RuleOutcome::Decided(b) = st.trivial_checks() {
        return Some(b);
    }
    loop {
        let mut any = apply_cleanup_rule(st) == RuleOutcome::Changed;
        match apply_center_label_rules(st) {
            RuleOutcome::Decided(b) => return Some(b),
            RuleOutcome::Changed => continue,
            RuleOutcome::Unchanged => {}
        }
        any |= apply_center_reduction(st) == RuleOutcome::Changed;
        if !any {
            break;
        }
    }
    if exceeds_size_bound(st.graph.n(), st.k) {
        st.decide(Rule::StarSizeBound, false);
        return Some(false);
    }
    None
}
