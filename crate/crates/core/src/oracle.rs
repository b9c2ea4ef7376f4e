//! Exact solvers. `solve_exact` uses problem-specific exponential algorithms;
//! `generic_solve` and the cost tables enumerate edit sets directly and serve as
//! the reference the specialized solvers are checked against.

use alloc::vec;
use alloc::vec::Vec;

use crate::clique::max_clique;
use crate::error::OracleError;
use crate::graph::{canonical, Edge, EdgeSet, EditMode, Graph};
use crate::problem::{Decision, Problem, ProblemInstance};
use crate::recognize::{find_obstruction, is_member, GraphClass};

/// Size limits of the specialized solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactLimits {
    /// Vertex limit of the subset scans (split and starforest problems).
    pub max_n: usize,
    /// Vertex limit of the maximum clique search.
    pub clique_max_n: usize,
    /// Vertex limit of the trivially perfect branching.
    pub tp_max_n: usize,
    /// Depth limit of the trivially perfect branching.
    pub tp_max_depth: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_n: 24,
            clique_max_n: 4096,
            tp_max_n: 512,
            tp_max_depth: 14,
        }
    }
}

/// Size limits of the reference enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericLimits {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for GenericLimits {
    fn default() -> Self {
        GenericLimits { max_n: 7, max_k: 4 }
    }
}

fn too_large(what: &'static str, value: usize, limit: usize) -> OracleError {
    OracleError::TooLarge { what, value, limit }
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

pub fn solve_exact(inst: &ProblemInstance) -> Result<Decision, OracleError> {
    solve_exact_with(inst, &ExactLimits::default())
}

pub fn solve_exact_with(inst: &ProblemInstance, limits: &ExactLimits) -> Result<Decision, OracleError> {
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;
    if k < 0 {
        return Ok(Decision::no());
    }
    let (cost, witness) = match inst.problem {
        Problem::CliqueIsDeletion => {
            if n > limits.clique_max_n {
                return Err(too_large("vertices", n, limits.clique_max_n));
            }
            clique_is_optimum(g)
        }
        Problem::SplitAddition => {
            if n > limits.max_n {
                return Err(too_large("vertices", n, limits.max_n));
            }
            split_add_optimum(g, &[], &[]).expect("unconstrained split addition is always feasible")
        }
        Problem::SplitDeletion => {
            if n > limits.max_n {
                return Err(too_large("vertices", n, limits.max_n));
            }
            // deleting F from g is adding F to the complement
            split_add_optimum(&g.complement(), &[], &[]).expect("unconstrained split addition is always feasible")
        }
        Problem::StarDeletion => {
            if n > limits.max_n {
                return Err(too_large("vertices", n, limits.max_n));
            }
            star_del_optimum(g)
        }
        Problem::TpAddition => {
            if n > limits.tp_max_n {
                return Err(too_large("vertices", n, limits.tp_max_n));
            }
            let non_edges = binom2(n) - g.m();
            let depth = (k as u64).min(non_edges as u64) as usize;
            match tp_add_search(g, depth, limits.tp_max_depth)? {
                Some(f) => (f.len(), f),
                None => return Ok(Decision::no()),
            }
        }
    };
    if cost as u64 <= k as u64 {
        Ok(Decision::yes(witness.into_iter().collect()))
    } else {
        Ok(Decision::no())
    }
}

/// Cost and witness: keep a maximum clique, delete every other edge.
fn clique_is_optimum(g: &Graph) -> (usize, Vec<Edge>) {
    let s = max_clique(g);
    let mut inside = vec![false; g.n()];
    for &v in &s {
        inside[v] = true;
    }
    let f: Vec<Edge> = g.edges().filter(|&(u, v)| !(inside[u] && inside[v])).collect();
    (f.len(), f)
}

/// Cheapest way to make `g` split by additions, with `forced_clique` on the
/// clique side and `forced_is` on the independent side. `None` if the forced
/// sets are infeasible (an edge inside the independent side, or overlap).
pub(crate) fn split_add_optimum(g: &Graph, forced_clique: &[usize], forced_is: &[usize]) -> Option<(usize, Vec<Edge>)> {
    let n = g.n();
    assert!(n <= 64, "split subset scan supports at most 64 vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |a, &w| a | 1 << w))
        .collect();
    let mut allowed = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut chosen = 0u64;
    for &v in forced_clique {
        allowed &= !(1 << v);
    }
    for &v in forced_is {
        if allowed >> v & 1 == 0 || adj[v] & chosen != 0 {
            return None;
        }
        chosen |= 1 << v;
        allowed &= !(1 << v);
    }
    if forced_is.iter().any(|&v| adj[v] & chosen != 0) {
        return None;
    }
    let base_deg: usize = forced_is.iter().map(|&v| g.degree(v)).sum();
    let mut search = SplitSearch {
        n,
        m: g.m(),
        adj: &adj,
        deg: (0..n).map(|v| g.degree(v)).collect(),
        best: usize::MAX,
        best_set: 0,
    };
    search.dfs(0, chosen, allowed, forced_is.len(), base_deg);
    let t = search.best_set;
    let s: Vec<usize> = (0..n).filter(|&v| t >> v & 1 == 0).collect();
    let mut f = Vec::new();
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if adj[u] >> v & 1 == 0 {
                f.push((u, v));
            }
        }
    }
    debug_assert_eq!(f.len(), search.best);
    Some((search.best, f))
}

struct SplitSearch<'a> {
    n: usize,
    m: usize,
    adj: &'a [u64],
    deg: Vec<usize>,
    best: usize,
    best_set: u64,
}

impl SplitSearch<'_> {
    /// Independent side `t` (size `size`, degree sum `deg_sum`); vertices `>= v`
    /// in `allowed` may still join it.
    fn dfs(&mut self, v: usize, t: u64, allowed: u64, size: usize, deg_sum: usize) {
        let clique = self.n - size;
        let missing = binom2(clique) - (self.m - deg_sum);
        if missing < self.best {
            self.best = missing;
            self.best_set = t;
        }
        for w in v..self.n {
            if allowed >> w & 1 == 1 && t & self.adj[w] == 0 {
                self.dfs(w + 1, t | 1 << w, allowed, size + 1, deg_sum + self.deg[w]);
            }
        }
    }
}

/// Cost and witness of the best center set: every non-center keeps the edge to
/// its smallest center neighbor.
fn star_del_optimum(g: &Graph) -> (usize, Vec<Edge>) {
    let n = g.n();
    assert!(n <= 32, "center-set scan supports at most 32 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
        .collect();
    let mut best = 0usize;
    let mut best_set = 0u32;
    let total: u64 = 1 << n;
    for s in 0..total {
        let s = s as u32;
        let kept = (0..n).filter(|&v| s >> v & 1 == 0 && adj[v] & s != 0).count();
        if kept > best {
            best = kept;
            best_set = s;
        }
    }
    let mut keep = EdgeSet::new();
    for v in (0..n).filter(|&v| best_set >> v & 1 == 0) {
        let centers = adj[v] & best_set;
        if centers != 0 {
            keep.insert(v, centers.trailing_zeros() as usize).unwrap();
        }
    }
    let f: Vec<Edge> = g.edges().filter(|&(u, v)| !keep.contains(u, v)).collect();
    (f.len(), f)
}

/// Smallest set of at most `depth` additions making `g` trivially perfect,
/// found by iterative deepening over the two diagonals of an obstruction.
fn tp_add_search(g: &Graph, depth: usize, max_depth: usize) -> Result<Option<Vec<Edge>>, OracleError> {
    let mut h = g.clone();
    let mut added = Vec::new();
    for d in 0..=depth {
        if d > max_depth {
            return Err(too_large("branching depth", d, max_depth));
        }
        if tp_branch(&mut h, d, &mut added) {
            added.sort_unstable();
            return Ok(Some(added));
        }
    }
    Ok(None)
}

fn tp_branch(h: &mut Graph, budget: usize, added: &mut Vec<Edge>) -> bool {
    let Some(o) = find_obstruction(GraphClass::TriviallyPerfect, h) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let v = &o.vertices;
    for (a, b) in [(v[0], v[2]), (v[1], v[3])] {
        h.add_edge(a, b).unwrap();
        added.push(canonical(a, b));
        if tp_branch(h, budget - 1, added) {
            return true;
        }
        added.pop();
        h.remove_edge(a, b).unwrap();
    }
    false
}

/// Reference solver: tries every set of at most `k` candidate edits.
pub fn generic_solve(inst: &ProblemInstance) -> Result<Decision, OracleError> {
    generic_solve_with(inst, &GenericLimits::default())
}

pub fn generic_solve_with(inst: &ProblemInstance, limits: &GenericLimits) -> Result<Decision, OracleError> {
    if inst.k < 0 {
        return Ok(Decision::no());
    }
    let k = inst.k as u64;
    match generic_min_edit(inst.problem, &inst.graph, k.min(usize::MAX as u64) as usize, limits)? {
        Some(f) => Ok(Decision::yes(f)),
        None => Ok(Decision::no()),
    }
}

/// A smallest edit set of size at most `cap`, by enumeration in order of size
/// and then lexicographically.
pub fn generic_min_edit(
    problem: Problem,
    g: &Graph,
    cap: usize,
    limits: &GenericLimits,
) -> Result<Option<EdgeSet>, OracleError> {
    let n = g.n();
    if n > limits.max_n {
        return Err(too_large("vertices", n, limits.max_n));
    }
    let mode = problem.mode();
    let cand: Vec<Edge> = match mode {
        EditMode::Delete => g.edges().collect(),
        EditMode::Add => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect(),
    };
    let cap = cap.min(cand.len());
    if cap > limits.max_k {
        return Err(too_large("budget", cap, limits.max_k));
    }
    let class = problem.class();
    let mut h = g.clone();
    let mut idx = Vec::new();
    for size in 0..=cap {
        if subsets_of_size(&cand, size, 0, &mut idx, &mut h, mode, class) {
            return Ok(Some(idx.iter().map(|&i| cand[i]).collect()));
        }
    }
    Ok(None)
}

fn subsets_of_size(
    cand: &[Edge],
    size: usize,
    from: usize,
    idx: &mut Vec<usize>,
    h: &mut Graph,
    mode: EditMode,
    class: GraphClass,
) -> bool {
    if size == 0 {
        return is_member(class, h);
    }
    for i in from..=cand.len().saturating_sub(size) {
        let (u, v) = cand[i];
        toggle(h, u, v, mode, true);
        idx.push(i);
        if subsets_of_size(cand, size - 1, i + 1, idx, h, mode, class) {
            toggle(h, u, v, mode, false);
            return true;
        }
        idx.pop();
        toggle(h, u, v, mode, false);
    }
    false
}

fn toggle(h: &mut Graph, u: usize, v: usize, mode: EditMode, apply: bool) {
    let add = (mode == EditMode::Add) == apply;
    if add {
        h.add_edge(u, v).unwrap();
    } else {
        h.remove_edge(u, v).unwrap();
    }
}

/// Pairs `(u, v)`, `u < v`, in lexicographic order: bit `i` of an edge mask
/// stands for the `i`-th pair.
pub fn pair_index(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    for (i, (u, v)) in pair_index(n).into_iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn mask_of_graph(g: &Graph) -> u64 {
    let n = g.n();
    assert!(binom2(n) <= 64, "graph too large for an edge mask");
    pair_index(n)
        .into_iter()
        .enumerate()
        .filter(|&(_, (u, v))| g.has_edge(u, v))
        .fold(0, |a, (i, _)| a | 1 << i)
}

/// Minimum number of edits into the class for every labeled graph on `n`
/// vertices, indexed by edge mask. Computed by dynamic programming over the
/// hypercube of edge sets: a graph costs 0 if it is a member and otherwise one
/// more than its cheapest single-edit neighbor.
#[derive(Clone, Debug)]
pub struct CostTable {
    pub n: usize,
    pub problem: Problem,
    cost: Vec<u8>,
}

impl CostTable {
    pub fn build(problem: Problem, n: usize) -> Result<Self, OracleError> {
        let pairs = binom2(n);
        if pairs > 21 {
            return Err(too_large("vertices", n, 7));
        }
        let size = 1usize << pairs;
        let class = problem.class();
        let mut cost = vec![u8::MAX; size];
        // deletions move to smaller masks, additions to larger ones
        let order: Vec<usize> = match problem.mode() {
            EditMode::Delete => (0..size).collect(),
            EditMode::Add => (0..size).rev().collect(),
        };
        for mask in order {
            if is_member(class, &graph_from_mask(n, mask as u64)) {
                cost[mask] = 0;
                continue;
            }
            let mut best = u8::MAX;
            for bit in 0..pairs {
                let present = mask >> bit & 1 == 1;
                let next = match problem.mode() {
                    EditMode::Delete if present => mask & !(1 << bit),
                    EditMode::Add if !present => mask | 1 << bit,
                    _ => continue,
                };
                best = best.min(cost[next]);
            }
            cost[mask] = best.saturating_add(1);
        }
        Ok(CostTable { n, problem, cost })
    }

    pub fn cost(&self, g: &Graph) -> usize {
        assert_eq!(g.n(), self.n);
        self.cost[mask_of_graph(g) as usize] as usize
    }

    pub fn cost_of_mask(&self, mask: u64) -> usize {
        self.cost[mask as usize] as usize
    }

    pub fn answer(&self, g: &Graph, k: i64) -> bool {
        k >= 0 && self.cost(g) as u64 <= k as u64
    }
}

/// A clique side and an independent side covering every vertex.
pub type SplitDecomposition = (Vec<usize>, Vec<usize>);

/// Every split decomposition `(K, I)` of `h` (clique side, independent side),
/// in increasing order of the clique side's bit mask.
pub fn enumerate_split_decompositions(h: &Graph) -> Result<Vec<SplitDecomposition>, OracleError> {
    let n = h.n();
    if n > 20 {
        return Err(too_large("vertices", n, 20));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    for kmask in 0..=full {
        let imask = full & !kmask;
        let ok = (0..n).all(|v| {
            if kmask >> v & 1 == 1 {
                (kmask & !(1 << v)) & !adj[v] == 0
            } else {
                adj[v] & imask == 0
            }
        });
        if ok {
            let k: Vec<usize> = (0..n).filter(|&v| kmask >> v & 1 == 1).collect();
            let i: Vec<usize> = (0..n).filter(|&v| imask >> v & 1 == 1).collect();
            out.push((k, i));
        }
        if kmask == full {
            break;
        }
    }
    if out.is_empty() {
        return Err(OracleError::NotSplit);
    }
    Ok(out)
}

/// Whether the labels `(k_side, i_side)` are compatible with the addition set
/// `f`: some split decomposition of `g + f` has `k_side` in its clique and
/// `i_side` in its independent set.
pub fn is_compatible(k_side: &[usize], i_side: &[usize], f: &EdgeSet, g: &Graph) -> Result<bool, OracleError> {
    let h = g.apply_edits(f, EditMode::Add)?;
    let decs = enumerate_split_decompositions(&h)?;
    Ok(decs.iter().any(|(kk, ii)| {
        k_side.iter().all(|v| kk.binary_search(v).is_ok()) && i_side.iter().all(|v| ii.binary_search(v).is_ok())
    }))
}

/// Fewest additions that make `g` split with `k_side` on the clique side and
/// `i_side` on the independent side, or `None` if no addition set can.
pub fn generalized_split_cost(g: &Graph, k_side: &[usize], i_side: &[usize]) -> Result<Option<usize>, OracleError> {
    let n = g.n();
    if n > 64 {
        return Err(too_large("vertices", n, 64));
    }
    Ok(split_add_optimum(g, k_side, i_side).map(|(c, _)| c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(problem: Problem, n: usize, edges: &[Edge], k: i64) -> ProblemInstance {
        ProblemInstance::new(problem, Graph::from_edges(n, edges).unwrap(), k)
    }

    fn both(i: &ProblemInstance) -> bool {
        let a = solve_exact(i).unwrap();
        let b = generic_solve(i).unwrap();
        assert_eq!(a.answer, b.answer, "{:?}", i);
        assert!(a.witness_is_valid(i.problem, &i.graph, i.k));
        assert!(b.witness_is_valid(i.problem, &i.graph, i.k));
        a.answer
    }

    const P3: &[Edge] = &[(0, 1), (1, 2)];
    const P4: &[Edge] = &[(0, 1), (1, 2), (2, 3)];
    const C4: &[Edge] = &[(0, 1), (1, 2), (2, 3), (0, 3)];
    const C5: &[Edge] = &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    const TWO_K2: &[Edge] = &[(0, 1), (2, 3)];
    const K3: &[Edge] = &[(0, 1), (1, 2), (0, 2)];
    const K4: &[Edge] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

    #[test]
    fn worked_examples() {
        use Problem::*;
        assert!(!both(&inst(CliqueIsDeletion, 3, P3, 0)));
        assert!(both(&inst(CliqueIsDeletion, 4, C4, 3)));
        assert!(!both(&inst(CliqueIsDeletion, 4, C4, 2)));
        assert!(both(&inst(SplitAddition, 4, TWO_K2, 1)));
        assert!(!both(&inst(SplitAddition, 4, TWO_K2, 0)));
        assert!(!both(&inst(SplitAddition, 5, C5, 1)));
        assert!(both(&inst(SplitAddition, 5, C5, 2)));
        assert!(both(&inst(TpAddition, 4, P4, 1)));
        assert!(!both(&inst(TpAddition, 4, P4, 0)));
        assert!(both(&inst(StarDeletion, 3, K3, 1)));
        assert!(!both(&inst(StarDeletion, 4, K4, 2)));
        assert!(both(&inst(StarDeletion, 4, K4, 3)));
        assert!(both(&inst(StarDeletion, 3, P3, 0)));
        assert!(both(&inst(TpAddition, 4, C4, 1)));
        assert!(both(&inst(SplitDeletion, 3, K3, 0)));
    }

    #[test]
    fn negative_budget_is_no() {
        let i = inst(Problem::StarDeletion, 3, P3, -1);
        assert!(!solve_exact(&i).unwrap().answer);
        assert!(!generic_solve(&i).unwrap().answer);
    }

    #[test]
    fn refusals() {
        let big = ProblemInstance::new(Problem::SplitAddition, Graph::new(30), 1);
        assert!(matches!(solve_exact(&big), Err(OracleError::TooLarge { .. })));
        let g = Graph::new(8);
        let i = ProblemInstance::new(Problem::StarDeletion, g, 0);
        assert!(matches!(generic_solve(&i), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn split_decompositions() {
        assert_eq!(enumerate_split_decompositions(&Graph::new(1)).unwrap().len(), 2);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_split_decompositions(&k2).unwrap().len(), 3);
        let p4 = Graph::from_edges(4, P4).unwrap();
        assert_eq!(
            enumerate_split_decompositions(&p4).unwrap(),
            vec![(vec![1, 2], vec![0, 3])]
        );
        let c4 = Graph::from_edges(4, C4).unwrap();
        assert_eq!(enumerate_split_decompositions(&c4), Err(OracleError::NotSplit));
    }

    #[test]
    fn compatibility_examples() {
        let p4 = Graph::from_edges(4, P4).unwrap();
        let none = EdgeSet::new();
        assert!(is_compatible(&[], &[], &none, &p4).unwrap());
        assert!(is_compatible(&[1], &[0], &none, &p4).unwrap());
        assert!(!is_compatible(&[0], &[], &none, &p4).unwrap());
        assert_eq!(generalized_split_cost(&p4, &[1], &[0]).unwrap(), Some(0));
        assert_eq!(generalized_split_cost(&p4, &[0], &[]).unwrap(), Some(1));
        assert_eq!(generalized_split_cost(&p4, &[], &[1, 2]).unwrap(), None);
    }

    #[test]
    fn cost_table_matches_generic() {
        for problem in Problem::ALL {
            let t = CostTable::build(problem, 4).unwrap();
            for mask in 0..64u64 {
                let g = graph_from_mask(4, mask);
                let c = t.cost(&g);
                for k in 0..=4 {
                    let i = ProblemInstance::new(problem, g.clone(), k);
                    assert_eq!(generic_solve(&i).unwrap().answer, c as i64 <= k);
                }
            }
        }
    }
}
