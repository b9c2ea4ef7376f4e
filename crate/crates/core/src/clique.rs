//! Maximum clique and bounded vertex cover search.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Fixed-size bit set backed by `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Adjacency bit sets of the subgraph induced on `vertices` (local ids follow
/// the slice order).
pub(crate) fn local_adjacency(g: &Graph, vertices: &[usize]) -> Vec<BitSet> {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    vertices
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(vertices.len());
            for &w in g.neighbors(v) {
                if local[w] != usize::MAX {
                    row.insert(local[w]);
                }
            }
            row
        })
        .collect()
}

/// A maximum clique of the graph given by local adjacency rows, as sorted local
/// ids. Branch and bound with greedy coloring bounds.
pub(crate) fn max_clique_local(adj: &[BitSet]) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, BitSet::full(adj.len()), &mut best);
    best.sort_unstable();
    best
}

fn expand(adj: &[BitSet], current: &mut Vec<usize>, mut cand: BitSet, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(adj, &cand);
    for i in (0..order.len()).rev() {
        if current.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        cand.remove(v);
    }
}

/// Greedy coloring of `cand`; returns vertices in non-decreasing color order and
/// the color (1-based) of each.
fn color_sort(adj: &[BitSet], cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// A maximum clique of `g` (sorted vertex ids).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let all: Vec<usize> = (0..g.n()).collect();
    max_clique_local(&local_adjacency(g, &all))
}

/// Size of a largest clique of `g` restricted to `vertices`.
pub fn max_clique_within(g: &Graph, vertices: &[usize]) -> usize {
    max_clique_local(&local_adjacency(g, vertices)).len()
}

/// A minimum vertex cover of the complement of `g` if one of size at most
/// `budget` exists. Bounded search tree with a high-degree rule; the cover
/// is returned sorted.
pub fn complement_vertex_cover(g: &Graph, budget: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let state = CoverState {
        alive: vec![true; n],
        alive_count: n,
        alive_nbrs: (0..n).map(|v| g.degree(v)).collect(),
        cover: Vec::new(),
    };
    (0..=budget.min(n)).find_map(|b| {
        let mut cover = search_cover(g, state.clone(), b)?;
        cover.sort_unstable();
        Some(cover)
    })
}

#[derive(Clone)]
struct CoverState {
    alive: Vec<bool>,
    alive_count: usize,
    alive_nbrs: Vec<usize>,
    cover: Vec<usize>,
}

impl CoverState {
    fn complement_degree(&self, v: usize) -> usize {
        self.alive_count - 1 - self.alive_nbrs[v]
    }

    fn kill(&mut self, g: &Graph, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.alive_count -= 1;
        for &w in g.neighbors(v) {
            self.alive_nbrs[w] -= 1;
        }
    }

    fn take(&mut self, g: &Graph, v: usize) {
        self.kill(g, v);
        self.cover.push(v);
    }
}

fn search_cover(g: &Graph, mut st: CoverState, mut budget: usize) -> Option<Vec<usize>> {
    loop {
        let mut best: Option<(usize, usize)> = None;
        let mut twice_edges = 0;
        for v in (0..g.n()).filter(|&v| st.alive[v]) {
            let d = st.complement_degree(v);
            twice_edges += d;
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        let Some((u, du)) = best.filter(|&(_, d)| d > 0) else {
            return Some(st.cover);
        };
        if budget == 0 || twice_edges / 2 > budget * du {
            return None;
        }
        if du > budget {
            st.take(g, u);
            budget -= 1;
            continue;
        }
        // branch 1: u joins the cover
        let mut with_u = st.clone();
        with_u.take(g, u);
        if let Some(c) = search_cover(g, with_u, budget - 1) {
            return Some(c);
        }
        // branch 2: all complement neighbors of u join the cover
        let mut adjacent = vec![false; g.n()];
        for &w in g.neighbors(u) {
            adjacent[w] = true;
        }
        let others: Vec<usize> = (0..g.n()).filter(|&w| w != u && st.alive[w] && !adjacent[w]).collect();
        for w in others {
            st.take(g, w);
        }
        st.kill(g, u);
        budget -= du;
    }
}
