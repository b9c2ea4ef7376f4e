//! Simple undirected graphs over dense vertex ids.
//!
//! Vertices are `0..n`. Adjacency is kept as one sorted `Vec` per vertex so that
//! neighborhood intersections run as linear merges, and the edge count is cached.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;

/// An unordered vertex pair, stored with the smaller id first.
pub type Edge = (usize, usize);

/// Returns the canonical form `(min, max)` of a pair.
#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A set of unordered vertex pairs, each stored canonically.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `{u, v}`. Returns `false` if the pair was already present.
    ///
    /// Self-loops are rejected.
    pub fn insert(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        Ok(self.0.insert(canonical(u, v)))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&canonical(u, v))
    }

    pub fn remove(&mut self, u: usize, v: usize) -> bool {
        self.0.remove(&canonical(u, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.iter().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    /// Collects pairs, silently dropping self-loops and duplicates.
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(
            iter.into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| canonical(u, v))
                .collect(),
        )
    }
}

/// Whether an edge set is added to or deleted from a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditMode {
    Add,
    Delete,
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an explicit list of pairs.
    ///
    /// Pairs are canonicalized before the duplicate check, so `(0,1)` and `(1,0)`
    /// together are rejected.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        for (u, list) in g.adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = canonical(u, w[0]);
                return Err(GraphError::DuplicateEdge { u: a, v: b });
            }
        }
        g.m = edges.len();
        Ok(g)
    }

    /// Builds a graph from an [`EdgeSet`]; duplicates cannot occur.
    pub fn from_edge_set(n: usize, edges: &EdgeSet) -> Result<Self, GraphError> {
        Graph::from_edges(n, &edges.to_vec())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        // search the shorter list
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// Inserts `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_pair(u, v)?;
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    /// Removes `{u, v}`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_pair(u, v)?;
        match self.adj[u].binary_search(&v) {
            Err(_) => Ok(false),
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
                self.adj[v].remove(pos);
                self.m -= 1;
                Ok(true)
            }
        }
    }

    /// Appends `count` isolated vertices and returns the id of the first one.
    pub fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.n();
        self.adj.resize_with(first + count, Vec::new);
        first
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = Vec::with_capacity(n);
        let mut m = 0;
        for (u, list) in self.adj.iter().enumerate() {
            let mut out = Vec::with_capacity(n - 1 - list.len());
            let mut it = list.iter().peekable();
            for v in 0..n {
                if it.peek() == Some(&&v) {
                    it.next();
                    continue;
                }
                if v != u {
                    out.push(v);
                }
            }
            m += out.len();
            adj.push(out);
        }
        Graph { adj, m: m / 2 }
    }

    /// Returns `g + f` or `g - f`.
    ///
    /// Adding an existing edge or deleting a missing one is rejected.
    pub fn apply_edits(&self, f: &EdgeSet, mode: EditMode) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (u, v) in f.iter() {
            match mode {
                EditMode::Add => {
                    if !g.add_edge(u, v)? {
                        return Err(GraphError::EdgePresent { u, v });
                    }
                }
                EditMode::Delete => {
                    if !g.remove_edge(u, v)? {
                        return Err(GraphError::EdgeMissing { u, v });
                    }
                }
            }
        }
        Ok(g)
    }

    fn check_vertices(&self, s: &[usize]) -> Result<(), GraphError> {
        match s.iter().find(|&&v| v >= self.n()) {
            Some(&v) => Err(GraphError::VertexOutOfRange { u: v, v, n: self.n() }),
            None => Ok(()),
        }
    }

    /// Number of unordered non-adjacent pairs inside `s`.
    pub fn non_edges_within(&self, s: &[usize]) -> Result<usize, GraphError> {
        self.check_vertices(s)?;
        let mut set: Vec<usize> = s.to_vec();
        set.sort_unstable();
        set.dedup();
        Ok(self.non_edges_within_sorted(&set, usize::MAX))
    }

    /// Counts non-adjacent pairs in the sorted, duplicate-free set `s`, stopping
    /// as soon as the count reaches `cap`.
    pub(crate) fn non_edges_within_sorted(&self, s: &[usize], cap: usize) -> usize {
        let len = s.len();
        if len < 2 {
            return 0;
        }
        let mut twice = 0usize;
        for &u in s {
            let inside = intersection_size(&self.adj[u], s);
            twice += len - 1 - inside;
            // every missing pair is seen from both ends, so `twice / 2` lags
            // behind by at most the contribution of the current vertex
            if twice >= cap.saturating_mul(2) {
                return cap;
            }
        }
        twice / 2
    }

    /// Replaces the vertices of `s` by a single vertex adjacent to the union of
    /// their neighborhoods.
    ///
    /// `s` must be independent. A vertex with several neighbors in `s` ends up
    /// with a single edge to the merged vertex. The merged vertex takes the place
    /// of `min(s)`; the remaining ids are compacted in order. Returns the new
    /// graph and the old-to-new id map.
    pub fn merge_vertices(&self, s: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        self.check_vertices(s)?;
        let n = self.n();
        let mut in_s = vec![false; n];
        for &v in s {
            in_s[v] = true;
        }
        for &v in s {
            if let Some(&w) = self.adj[v].iter().find(|&&w| in_s[w]) {
                return Err(GraphError::NotIndependent {
                    u: v.min(w),
                    v: v.max(w),
                });
            }
        }
        let target = *s.iter().min().unwrap();
        let mut mapping = vec![0usize; n];
        let mut next = 0;
        for v in 0..n {
            if in_s[v] && v != target {
                continue;
            }
            mapping[v] = next;
            next += 1;
        }
        for &v in s {
            mapping[v] = mapping[target];
        }
        let mut adj = vec![Vec::new(); next];
        for u in 0..n {
            let nu = mapping[u];
            for &w in &self.adj[u] {
                adj[nu].push(mapping[w]);
            }
        }
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        let g = Graph { adj, m: twice / 2 };
        g.debug_validate();
        Ok((g, mapping))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Deletes every vertex flagged in `remove` and compacts the remaining ids in
    /// order. Returns the old-to-new map (`None` for deleted vertices).
    pub fn remove_vertices_mask(&mut self, remove: &[bool]) -> Vec<Option<usize>> {
        let n = self.n();
        debug_assert_eq!(remove.len(), n);
        let mut mapping = vec![None; n];
        let mut next = 0;
        for v in 0..n {
            if !remove[v] {
                mapping[v] = Some(next);
                next += 1;
            }
        }
        let old = core::mem::take(&mut self.adj);
        let mut adj = Vec::with_capacity(next);
        let mut twice = 0;
        for (v, list) in old.into_iter().enumerate() {
            if remove[v] {
                continue;
            }
            // mapping is monotone, so the filtered list stays sorted
            let list: Vec<usize> = list.into_iter().filter_map(|w| mapping[w]).collect();
            twice += list.len();
            adj.push(list);
        }
        self.adj = adj;
        self.m = twice / 2;
        mapping
    }

    /// Deletes the listed vertices; see [`Graph::remove_vertices_mask`].
    pub fn remove_vertices(&mut self, remove: &[usize]) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertices(remove)?;
        let mut mask = vec![false; self.n()];
        for &v in remove {
            mask[v] = true;
        }
        Ok(self.remove_vertices_mask(&mask))
    }

    /// The subgraph induced on `keep`, with vertices renumbered in increasing
    /// order of their old ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(keep)?;
        let mut mask = vec![true; self.n()];
        for &v in keep {
            mask[v] = false;
        }
        let mut g = self.clone();
        g.remove_vertices_mask(&mask);
        Ok(g)
    }

    /// Checks symmetry, loop-freeness, sortedness and the cached edge count.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut twice = 0;
        for (u, list) in self.adj.iter().enumerate() {
            twice += list.len();
            for (i, &v) in list.iter().enumerate() {
                if v >= self.n() {
                    return Err(GraphError::VertexOutOfRange { u, v, n: self.n() });
                }
                if v == u {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
                if i > 0 && list[i - 1] >= v {
                    return Err(GraphError::Corrupt("adjacency list not strictly sorted"));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Corrupt("adjacency not symmetric"));
                }
            }
        }
        if twice != 2 * self.m {
            return Err(GraphError::Corrupt("cached edge count is stale"));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        if let Err(e) = self.validate() {
            panic!("graph invariant broken: {e}");
        }
    }
}

/// Size of the intersection of two sorted slices.
pub fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Intersection of two sorted slices.
pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn k(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn build_graph_cases() {
        let g = Graph::from_edges(3, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
        let g = k(3);
        assert_eq!(g.m(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
        assert_eq!(
            Graph::from_edges(4, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { u: 0, v: 2, n: 2 })
        );
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop { vertex: 1 }));
    }

    #[test]
    fn complement_cases() {
        assert_eq!(k(3).complement(), Graph::new(3));
        assert_eq!(p3().complement(), Graph::from_edges(3, &[(0, 2)]).unwrap());
        assert_eq!(cycle(5).complement().complement(), cycle(5));
    }

    #[test]
    fn apply_edits_cases() {
        let empty = EdgeSet::new();
        assert_eq!(p3().apply_edits(&empty, EditMode::Add).unwrap(), p3());
        let f: EdgeSet = [(0, 2)].into_iter().collect();
        assert_eq!(p3().apply_edits(&f, EditMode::Add).unwrap(), k(3));
        let all = k(3).edge_set();
        assert_eq!(k(3).apply_edits(&all, EditMode::Delete).unwrap(), Graph::new(3));
        assert_eq!(
            p3().apply_edits(&f, EditMode::Delete),
            Err(GraphError::EdgeMissing { u: 0, v: 2 })
        );
        let g: EdgeSet = [(1, 0)].into_iter().collect();
        assert_eq!(
            p3().apply_edits(&g, EditMode::Add),
            Err(GraphError::EdgePresent { u: 0, v: 1 })
        );
    }

    #[test]
    fn non_edges_within_cases() {
        assert_eq!(k(4).non_edges_within(&[0, 1, 2, 3]).unwrap(), 0);
        assert_eq!(Graph::new(4).non_edges_within(&[0, 1, 2, 3]).unwrap(), 6);
        assert_eq!(cycle(4).non_edges_within(&[0, 1, 2, 3]).unwrap(), 2);
        assert!(cycle(4).non_edges_within(&[0, 9]).is_err());
    }

    #[test]
    fn non_edges_cap_is_lower_bound() {
        let g = Graph::new(10);
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(g.non_edges_within_sorted(&all, usize::MAX), 45);
        assert!(g.non_edges_within_sorted(&all, 3) >= 3);
    }

    #[test]
    fn merge_cases() {
        let (g, map) = p3().merge_vertices(&[0, 2]).unwrap();
        assert_eq!(g, Graph::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(map, vec![0, 1, 0]);

        let (g, _) = cycle(5).merge_vertices(&[3]).unwrap();
        assert_eq!(g, cycle(5));

        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (g, map) = two_k2.merge_vertices(&[0, 2]).unwrap();
        // merged vertex adjacent to old 1 and old 3: a P3 centered at the merged vertex
        assert_eq!(map, vec![0, 1, 0, 2]);
        assert_eq!(g, Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());

        assert!(matches!(
            k(3).merge_vertices(&[0, 1]),
            Err(GraphError::NotIndependent { .. })
        ));
        // shared neighbors keep a single edge
        let (g, _) = cycle(4).merge_vertices(&[0, 2]).unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());
    }

    #[test]
    fn components_cases() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let sizes: Vec<usize> = g.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert_eq!(Graph::new(4).connected_components().len(), 4);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.connected_components(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn remove_and_induce() {
        let mut g = cycle(5);
        let map = g.remove_vertices(&[1]).unwrap();
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2), Some(3)]);
        assert_eq!(g, Graph::from_edges(4, &[(1, 2), (2, 3), (3, 0)]).unwrap());
        let h = cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(h, p3());
    }
}
