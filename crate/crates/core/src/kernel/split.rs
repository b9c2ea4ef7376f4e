//! Linear kernel for Split Addition, and for Split Deletion through the
//! complement. Vertices are labeled clique side (K), independent side (I) or
//! undecided (D) until the labels can be traded for small gadgets.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{forcing_independent_size, gt_mul_sqrt};
use crate::clique::{local_adjacency, BitSet};
use crate::graph::{Edge, Graph};
use crate::problem::{Problem, ProblemInstance};
use crate::trace::{Edit, KernelOutcome, Label, Rule};

use super::{KernelState, RuleOutcome};

/// A split addition instance with a partial labeling.
#[derive(Clone, Debug)]
pub struct SplitState {
    pub base: KernelState,
    pub labels: Vec<Option<Label>>,
}

/// Per-vertex neighbor counts by label, plus label class sizes.
struct Counts {
    in_k: Vec<usize>,
    in_i: Vec<usize>,
    in_d: Vec<usize>,
    k_size: usize,
    d_size: usize,
}

impl SplitState {
    /// An addition instance with every vertex undecided.
    pub fn new(g: &Graph, k: i64) -> Self {
        SplitState {
            base: KernelState::new(&ProblemInstance::new(Problem::SplitAddition, g.clone(), k)),
            labels: vec![None; g.n()],
        }
    }

    pub fn with_labels(g: &Graph, k: i64, clique: &[usize], independent: &[usize]) -> Self {
        let mut st = SplitState::new(g, k);
        for &v in clique {
            st.labels[v] = Some(Label::Clique);
        }
        for &v in independent {
            st.labels[v] = Some(Label::Independent);
        }
        st
    }

    pub fn labeled(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] == Some(label))
            .collect()
    }

    pub fn undecided(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v].is_none()).collect()
    }

    fn counts(&self) -> Counts {
        let g = &self.base.graph;
        let n = g.n();
        let mut c = Counts {
            in_k: vec![0; n],
            in_i: vec![0; n],
            in_d: vec![0; n],
            k_size: 0,
            d_size: 0,
        };
        for v in 0..n {
            match self.labels[v] {
                Some(Label::Clique) => c.k_size += 1,
                None => c.d_size += 1,
                _ => {}
            }
            for &w in g.neighbors(v) {
                match self.labels[w] {
                    Some(Label::Clique) => c.in_k[v] += 1,
                    Some(Label::Independent) => c.in_i[v] += 1,
                    None => c.in_d[v] += 1,
                }
            }
        }
        c
    }

    fn label(&mut self, rule: Rule, label: Label, vertices: Vec<usize>) -> bool {
        if vertices.is_empty() {
            return false;
        }
        for &v in &vertices {
            self.labels[v] = Some(label);
        }
        self.base.trace.push(rule, vec![Edit::Label { label, vertices }], 0);
        true
    }
}

fn changed(c: bool) -> RuleOutcome {
    if c {
        RuleOutcome::Changed
    } else {
        RuleOutcome::Unchanged
    }
}

/// Moves to I every undecided vertex whose neighbors all lie in K (a), or
/// that misses at least `k + 1` vertices of K (b).
pub fn apply_i_rules(st: &mut SplitState) -> RuleOutcome {
    let c = st.counts();
    let g = &st.base.graph;
    let k = st.base.k;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in st.undecided() {
        if c.in_k[v] == g.degree(v) {
            a.push(v);
        } else if (c.k_size - c.in_k[v]) as i64 > k {
            b.push(v);
        }
    }
    let ca = st.label(Rule::SplitIsOnlyCliqueNeighbors, Label::Independent, a);
    let cb = st.label(Rule::SplitIsManyCliqueNonNeighbors, Label::Independent, b);
    changed(ca || cb)
}

/// Moves to K every undecided vertex with a neighbor in I (a), with at least
/// `k + 1` non-edges in its neighborhood (b), or adjacent to all of `K ∪ D`
/// (c).
pub fn apply_k_rules(st: &mut SplitState) -> RuleOutcome {
    let c = st.counts();
    let g = &st.base.graph;
    let cap = st.base.k.max(0) as usize + 1;
    let (mut a, mut b, mut cc) = (Vec::new(), Vec::new(), Vec::new());
    let mut rows = None;
    for v in st.undecided() {
        if c.in_i[v] > 0 {
            a.push(v);
        } else if g.degree(v) >= 2 && neighborhood_non_edges(g, v, cap, &mut rows) >= cap {
            b.push(v);
        } else if c.in_k[v] == c.k_size && c.in_d[v] + 1 == c.d_size {
            cc.push(v);
        }
    }
    let ca = st.label(Rule::SplitCliqueNeighborInIs, Label::Clique, a);
    let cb = st.label(Rule::SplitCliqueManyNonEdges, Label::Clique, b);
    let ccc = st.label(Rule::SplitCliqueDominates, Label::Clique, cc);
    changed(ca || cb || ccc)
}

/// Graphs up to this order get adjacency bitsets for neighborhood scans.
const DENSE_ROWS_MAX_N: usize = 4096;

/// Non-edges inside `N(v)`, capped at `cap`. Dense neighborhoods of moderate
/// graphs are counted with bitset rows, built on first use.
fn neighborhood_non_edges(g: &Graph, v: usize, cap: usize, rows: &mut Option<Vec<BitSet>>) -> usize {
    let nv = g.neighbors(v);
    if g.n() > DENSE_ROWS_MAX_N || nv.len() < 64 {
        return g.non_edges_within_sorted(nv, cap);
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let rows = rows.get_or_insert_with(|| local_adjacency(g, &all));
    let mut twice = 0usize;
    for &u in nv {
        twice += nv.len() - 1 - rows[u].intersection_count(&rows[v]);
        if twice >= cap.saturating_mul(2) {
            return cap;
        }
    }
    twice / 2
}

/// Completes K to a clique (a), rejects on a negative budget (b) or on an edge
/// inside I (c).
pub fn apply_reduction_rules(st: &mut SplitState) -> RuleOutcome {
    let c = st.counts();
    let kset = st.labeled(Label::Clique);
    let inner: usize = kset.iter().map(|&v| c.in_k[v]).sum::<usize>() / 2;
    let missing = kset.len() * kset.len().saturating_sub(1) / 2 - inner;
    let mut any = false;
    if missing > 0 {
        if missing as i64 > st.base.k {
            // filling would drive the budget below zero
            return st.base.decide(Rule::SplitNegativeBudget, false);
        }
        let mut add: Vec<Edge> = Vec::new();
        for &u in kset.iter().filter(|&&u| c.in_k[u] + 1 < kset.len()) {
            for &w in kset.iter().filter(|&&w| w > u) {
                if !st.base.graph.has_edge(u, w) {
                    add.push((u, w));
                }
            }
        }
        debug_assert_eq!(add.len(), missing);
        for &(u, w) in &add {
            st.base.graph.add_edge(u, w).unwrap();
        }
        st.base.k -= missing as i64;
        st.base
            .trace
            .push(Rule::SplitFillClique, vec![Edit::AddEdges(add)], -(missing as i64));
        any = true;
    }
    if st.base.k < 0 {
        return st.base.decide(Rule::SplitNegativeBudget, false);
    }
    if (0..st.labels.len()).any(|v| st.labels[v] == Some(Label::Independent) && c.in_i[v] > 0) {
        return st.base.decide(Rule::SplitEdgeInIs, false);
    }
    changed(any)
}

/// `|D| > 10k + 5 sqrt(2k) + 4`, in integers: `5 sqrt(2k) = sqrt(50k)`.
pub fn exceeds_undecided_bound(d: usize, k: i64) -> bool {
    let x = d as i128 - 10 * k as i128 - 4;
    gt_mul_sqrt(x, 1, 50 * k as i128)
}

/// Replaces the labeled vertices by gadgets of bounded size and forgets the
/// labels. Requires the labeling rules to be at their fixpoint.
pub fn apply_unlabeling(st: &mut SplitState) -> RuleOutcome {
    let kset = st.labeled(Label::Clique);
    let iset = st.labeled(Label::Independent);
    if kset.is_empty() && iset.is_empty() {
        return RuleOutcome::Unchanged;
    }
    let k = st.base.k;
    assert!(k >= 0, "unlabeling needs a non-negative budget");
    let kk = k as usize;
    let c = st.counts();
    let replace = kset.len() > kk;
    let d_misses: Vec<(usize, usize)> = if replace {
        st.undecided()
            .into_iter()
            .map(|v| {
                let t = kset.len() - c.in_k[v];
                assert!(t <= kk, "undecided vertex misses more than k clique vertices");
                (v, t)
            })
            .collect()
    } else {
        Vec::new()
    };

    let removed: Vec<usize> = if replace {
        let mut r: Vec<usize> = kset.iter().chain(&iset).copied().collect();
        r.sort_unstable();
        r
    } else {
        iset.clone()
    };
    let map = st.base.graph.remove_vertices(&removed).unwrap();
    let base = st.base.graph.n();
    let mut edges: Vec<Edge> = Vec::new();
    let clique_side: Vec<usize> = if replace {
        let kp: Vec<usize> = (base..base + kk).collect();
        for (i, &u) in kp.iter().enumerate() {
            for &w in &kp[i + 1..] {
                edges.push((u, w));
            }
        }
        for &(v, t) in &d_misses {
            let nv = map[v].unwrap();
            for &w in &kp[t..] {
                edges.push((nv, w));
            }
        }
        kp
    } else {
        kset.iter().map(|&v| map[v].unwrap()).collect()
    };
    let mut count = if replace { kk } else { 0 };
    if !clique_side.is_empty() {
        let s = forcing_independent_size(k);
        let first = base + count;
        for x in first..first + s {
            for &w in &clique_side {
                edges.push((w.min(x), w.max(x)));
            }
        }
        count += s;
    }
    st.base.graph.add_vertices(count);
    for &(u, v) in &edges {
        st.base.graph.add_edge(u, v).unwrap();
    }
    st.labels = vec![None; st.base.graph.n()];
    st.base.trace.push(
        Rule::SplitUnlabel,
        vec![
            Edit::RemoveVertices(removed),
            Edit::AppendVertices { count, edges },
            Edit::ClearLabels,
        ],
        0,
    );
    RuleOutcome::Changed
}

/// Runs the labeling and reduction rules to their joint fixpoint.
pub fn label_to_fixpoint(st: &mut SplitState) -> Option<bool> {
    loop {
        let mut any = false;
        for rule in [apply_i_rules, apply_k_rules, apply_reduction_rules] {
            match rule(st) {
                RuleOutcome::Decided(b) => return Some(b),
                RuleOutcome::Changed => any = true,
                RuleOutcome::Unchanged => {}
            }
        }
        if !any {
            return None;
        }
    }
}

pub fn kernelize_split(g: &Graph, k: i64, problem: Problem) -> KernelOutcome {
    assert!(matches!(problem, Problem::SplitAddition | Problem::SplitDeletion));
    let inst = ProblemInstance::new(problem, g.clone(), k);
    let mut outer = KernelState::new(&inst);
    if let RuleOutcome::Decided(b) = outer.trivial_checks() {
        return outer.finish(Some(b));
    }
    let deletion = problem == Problem::SplitDeletion;
    let working = if deletion { g.complement() } else { g.clone() };
    let mut st = SplitState::new(&working, k);
    st.base.trace = core::mem::take(&mut outer.trace);
    if deletion {
        st.base.trace.push(Rule::SplitComplement, vec![Edit::Complement], 0);
    }
    let decided = run(&mut st);
    let mut base = st.base;
    if decided.is_none() && deletion {
        base.graph = base.graph.complement();
        base.problem = Problem::SplitDeletion;
        base.trace.push(Rule::SplitComplement, vec![Edit::Complement], 0);
    }
    base.finish(decided)
}

fn run(st: &mut SplitState) -> Option<bool> {
    if let Some(b) = label_to_fixpoint(st) {
        return Some(b);
    }
    if exceeds_undecided_bound(st.undecided().len(), st.base.k) {
        st.base.decide(Rule::SplitSizeBound, false);
        return Some(false);
    }
    apply_unlabeling(st);
    None
}
