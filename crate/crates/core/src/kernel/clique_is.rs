//! Sublinear kernel for Clique+IS Deletion.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{floor_four_log2, le_two_log2, log2, lt_sqrt};
use crate::clique::{complement_vertex_cover, max_clique_within};
use crate::graph::{EdgeSet, Graph};
use crate::oracle::{solve_exact_with, ExactLimits};
use crate::problem::{Decision, Problem, ProblemInstance};
use crate::trace::{KernelOutcome, Rule};

use super::{KernelState, RuleOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueIsConfig {
    /// Size rejection only applies above this budget.
    pub large_k_threshold: i64,
    pub enable_size_rejection: bool,
    /// Largest vertex count handed to the exact solver when `k < 2`.
    pub small_k_solver_limit: usize,
}

impl Default for CliqueIsConfig {
    fn default() -> Self {
        CliqueIsConfig {
            large_k_threshold: 257,
            enable_size_rejection: true,
            small_k_solver_limit: 512,
        }
    }
}

fn binom2(x: usize) -> u64 {
    (x as u64) * (x as u64).saturating_sub(1) / 2
}

/// Deletes, until none is left, vertices `v` with `d(v) < sqrt(2(m-k)) - 1`.
///
/// Deleting `v` lowers both `m` and `k` by `d(v)`, so `m - k` and with it the
/// threshold stay fixed and the rule closes over a simple work queue.
pub fn apply_low_degree_rule(st: &mut KernelState) -> RuleOutcome {
    let g = &st.graph;
    let n = g.n();
    let gap = g.m() as i128 - st.k as i128;
    if gap <= 0 {
        return RuleOutcome::Unchanged;
    }
    let low = |d: usize| lt_sqrt(d as i128 + 1, 2 * gap);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| low(deg[v])).collect();
    for &v in &queue {
        queued[v] = true;
    }
    let mut cost = 0i64;
    while let Some(v) = queue.pop_front() {
        removed[v] = true;
        cost += deg[v] as i64;
        for &w in g.neighbors(v) {
            if removed[w] {
                continue;
            }
            deg[w] -= 1;
            if !queued[w] && low(deg[w]) {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }
    if !removed.iter().any(|&r| r) {
        return RuleOutcome::Unchanged;
    }
    st.remove_vertices(Rule::CliqueLowDegree, &removed, cost);
    if st.k < 0 {
        return st.decide(Rule::NegativeBudget, false);
    }
    RuleOutcome::Changed
}

/// Whether some clique `S` with `v ∈ S ⊆ N[v]` keeps at least `m - k` edges.
pub fn clique_candidate_exists(g: &Graph, k: i64, v: usize) -> bool {
    let need = g.m() as i128 - k as i128;
    if need <= 0 {
        return true;
    }
    let omega = max_clique_within(g, g.neighbors(v));
    binom2(omega + 1) as i128 >= need
}

/// For `k >= 2`, deletes vertices of degree at most `2 log2 k` that lie in no
/// clique able to keep `m - k` edges; such a vertex ends up in the independent
/// side of every solution. One pass in id order with the budget updated after
/// each deletion.
pub fn apply_log_degree_rule(st: &mut KernelState) -> RuleOutcome {
    if st.k < 2 {
        return RuleOutcome::Unchanged;
    }
    let g = &st.graph;
    let n = g.n();
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let need = g.m() as i128 - st.k as i128;
    let mut k = st.k;
    let mut any = false;
    for v in 0..n {
        if k < 2 || !le_two_log2(deg[v], k) {
            continue;
        }
        let alive: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !removed[w]).collect();
        // m - k does not change under deletions, so `need` stays valid
        let omega = max_clique_within(g, &alive);
        if need <= 0 || binom2(omega + 1) as i128 >= need {
            continue;
        }
        removed[v] = true;
        any = true;
        k -= deg[v] as i64;
        for &w in &alive {
            deg[w] -= 1;
        }
    }
    if !any {
        return RuleOutcome::Unchanged;
    }
    let cost = st.k - k;
    st.remove_vertices(Rule::CliqueLogDegree, &removed, cost);
    if st.k < 0 {
        return st.decide(Rule::NegativeBudget, false);
    }
    RuleOutcome::Changed
}

/// When `δ(G) >= k / (2 log2 k)`, decides the instance through a minimum vertex
/// cover of the complement: the cover is the independent side of an optimal
/// solution. Returns `None` when the rule does not apply.
pub fn high_degree_decision(g: &Graph, k: i64) -> Option<Decision> {
    if k < 2 {
        return None;
    }
    let delta = g.min_degree()?;
    if (delta as f64) * 2.0 * log2(k) < k as f64 {
        return None;
    }
    let Some(cover) = complement_vertex_cover(g, floor_four_log2(k)) else {
        return Some(Decision::no());
    };
    let mut f = EdgeSet::new();
    for &v in &cover {
        for &w in g.neighbors(v) {
            f.insert(v, w).unwrap();
        }
    }
    if f.len() as i64 <= k {
        Some(Decision::yes(f))
    } else {
        Some(Decision::no())
    }
}

pub fn apply_high_degree_rule(st: &mut KernelState) -> RuleOutcome {
    match high_degree_decision(&st.graph, st.k) {
        Some(d) => st.decide(Rule::CliqueHighDegree, d.answer),
        None => RuleOutcome::Unchanged,
    }
}

/// `|V| > 2k / log2 k + 1`.
fn exceeds_size_bound(n: usize, k: i64) -> bool {
    ((n as f64) - 1.0) * log2(k) > 2.0 * k as f64
}

fn trivial(st: &mut KernelState) -> RuleOutcome {
    if st.k < 0 {
        return st.decide(Rule::NegativeBudget, false);
    }
    if st.k >= st.graph.m() as i64 {
        return st.decide(Rule::BudgetCoversEdges, true);
    }
    st.trivial_checks()
}

pub fn kernelize_clique_is(g: &Graph, k: i64, cfg: &CliqueIsConfig) -> KernelOutcome {
    let inst = ProblemInstance::new(Problem::CliqueIsDeletion, g.clone(), k);
    let mut st = KernelState::new(&inst);
    let decided = run(&mut st, cfg);
    st.finish(decided)
}

fn run(st: &mut KernelState, cfg: &CliqueIsConfig) -> Option<bool> {
    loop {
        if let RuleOutcome::Decided(b) = trivial(st) {
            return Some(b);
        }
        match apply_low_degree_rule(st) {
            RuleOutcome::Decided(b) => return Some(b),
            RuleOutcome::Changed => continue,
            RuleOutcome::Unchanged => {}
        }
        match apply_log_degree_rule(st) {
            RuleOutcome::Decided(b) => return Some(b),
            RuleOutcome::Changed => continue,
            RuleOutcome::Unchanged => break,
        }
    }
    if let RuleOutcome::Decided(b) = apply_high_degree_rule(st) {
        return Some(b);
    }
    if cfg.enable_size_rejection && st.k > cfg.large_k_threshold && exceeds_size_bound(st.graph.n(), st.k) {
        st.decide(Rule::CliqueSizeBound, false);
        return Some(false);
    }
    if st.k < 2 && st.graph.n() <= cfg.small_k_solver_limit {
        let limits = ExactLimits {
            clique_max_n: cfg.small_k_solver_limit,
            ..ExactLimits::default()
        };
        let inst = ProblemInstance::new(st.problem, st.graph.clone(), st.k);
        let answer = solve_exact_with(&inst, &limits)
            .expect("vertex count checked against the solver limit")
            .answer;
        st.decide(Rule::CliqueSmallBudget, answer);
        return Some(answer);
    }
    None
}
