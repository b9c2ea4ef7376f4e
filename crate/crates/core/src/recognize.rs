//! Membership tests and forbidden-pattern witnesses for the four target classes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::Graph;

/// The graph classes the edge-modification problems aim for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    /// One clique plus isolated vertices.
    CliquePlusIS,
    Split,
    TriviallyPerfect,
    Starforest,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] = [
        GraphClass::CliquePlusIS,
        GraphClass::Split,
        GraphClass::TriviallyPerfect,
        GraphClass::Starforest,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GraphClass::CliquePlusIS => "clique-is",
            GraphClass::Split => "split",
            GraphClass::TriviallyPerfect => "trivially-perfect",
            GraphClass::Starforest => "starforest",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphClass {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clique-is" | "clique+is" => Ok(GraphClass::CliquePlusIS),
            "split" => Ok(GraphClass::Split),
            "trivially-perfect" | "tp" => Ok(GraphClass::TriviallyPerfect),
            "starforest" | "star" => Ok(GraphClass::Starforest),
            _ => Err(UnknownTag),
        }
    }
}

/// Returned when parsing an unknown class or problem tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownTag;

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown tag")
    }
}

/// Small induced patterns that certify non-membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionKind {
    /// Path `a-b-c`.
    P3,
    /// Edges `ab` and `cd`, nothing else.
    TwoK2,
    /// Cycle `a-b-c-d-a`.
    C4,
    /// Cycle `a-b-c-d-e-a`.
    C5,
    /// Path `a-b-c-d`.
    P4,
    /// Triangle `abc`.
    Triangle,
}

impl ObstructionKind {
    fn pattern(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            ObstructionKind::P3 => (3, &[(0, 1), (1, 2)]),
            ObstructionKind::TwoK2 => (4, &[(0, 1), (2, 3)]),
            ObstructionKind::C4 => (4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            ObstructionKind::C5 => (5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
            ObstructionKind::P4 => (4, &[(0, 1), (1, 2), (2, 3)]),
            ObstructionKind::Triangle => (3, &[(0, 1), (1, 2), (0, 2)]),
        }
    }
}

/// An induced copy of a forbidden pattern, vertices listed in pattern order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: Vec<usize>,
}

impl Obstruction {
    fn new(kind: ObstructionKind, vertices: &[usize]) -> Self {
        Obstruction {
            kind,
            vertices: vertices.to_vec(),
        }
    }

    /// True iff the vertices are distinct and induce exactly the pattern in the
    /// listed order.
    pub fn verify(&self, g: &Graph) -> bool {
        let (size, edges) = self.kind.pattern();
        let vs = &self.vertices;
        if vs.len() != size || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for i in 0..size {
            for j in i + 1..size {
                if vs[i] == vs[j] {
                    return false;
                }
                let want = edges.contains(&(i, j));
                if g.has_edge(vs[i], vs[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

pub fn is_member(class: GraphClass, g: &Graph) -> bool {
    match class {
        GraphClass::CliquePlusIS => is_clique_plus_is(g),
        GraphClass::Split => split_decomposition(g).is_some(),
        GraphClass::TriviallyPerfect => trivially_perfect_witness(g).is_ok(),
        GraphClass::Starforest => is_starforest(g),
    }
}

/// One induced forbidden pattern of `class`, or `None` when `g` is a member.
pub fn find_obstruction(class: GraphClass, g: &Graph) -> Option<Obstruction> {
    match class {
        GraphClass::CliquePlusIS => clique_plus_is_obstruction(g),
        GraphClass::Split => {
            if split_decomposition(g).is_some() {
                None
            } else {
                let o = split_obstruction(g);
                debug_assert!(o.is_some(), "non-split graph without 2K2/C4/C5");
                o
            }
        }
        GraphClass::TriviallyPerfect => trivially_perfect_witness(g).err(),
        GraphClass::Starforest => starforest_obstruction(g),
    }
}

fn is_clique_plus_is(g: &Graph) -> bool {
    let core = (0..g.n()).filter(|&v| g.degree(v) > 0).count();
    (0..g.n()).all(|v| g.degree(v) == 0 || g.degree(v) == core - 1)
}

fn clique_plus_is_obstruction(g: &Graph) -> Option<Obstruction> {
    let comps: Vec<Vec<usize>> = g.connected_components().into_iter().filter(|c| c.len() > 1).collect();
    if comps.len() >= 2 {
        let a = comps[0][0];
        let b = g.neighbors(a)[0];
        let c = comps[1][0];
        let d = g.neighbors(c)[0];
        return Some(Obstruction::new(ObstructionKind::TwoK2, &[a, b, c, d]));
    }
    let comp = comps.first()?;
    let v = *comp.iter().find(|&&v| g.degree(v) + 1 < comp.len())?;
    for &x in g.neighbors(v) {
        for &u in g.neighbors(x) {
            if u != v && !g.has_edge(u, v) {
                return Some(Obstruction::new(ObstructionKind::P3, &[v, x, u]));
            }
        }
    }
    unreachable!("connected non-clique component has a vertex at distance two")
}

fn is_starforest(g: &Graph) -> bool {
    // a component is a star iff no edge joins two vertices of degree >= 2
    g.edges().all(|(u, v)| g.degree(u) < 2 || g.degree(v) < 2)
}

fn starforest_obstruction(g: &Graph) -> Option<Obstruction> {
    let (u, v) = g.edges().find(|&(u, v)| g.degree(u) >= 2 && g.degree(v) >= 2)?;
    let x = *g.neighbors(u).iter().find(|&&x| x != v).unwrap();
    if g.has_edge(x, v) {
        return Some(Obstruction::new(ObstructionKind::Triangle, &[x, u, v]));
    }
    for &y in g.neighbors(v) {
        if y == u {
            continue;
        }
        if g.has_edge(y, u) {
            return Some(Obstruction::new(ObstructionKind::Triangle, &[u, v, y]));
        }
        let kind = if g.has_edge(x, y) {
            ObstructionKind::C4
        } else {
            ObstructionKind::P4
        };
        return Some(Obstruction::new(kind, &[x, u, v, y]));
    }
    unreachable!("v has degree at least two")
}

/// A split decomposition `(K, I)` computed from the degree sequence, or `None`
/// when `g` is not split.
///
/// With degrees sorted non-increasingly and `r` the largest index with
/// `d_r >= r - 1`, the graph is split iff the top `r` degrees sum to
/// `r(r-1)` plus the sum of the remaining degrees; the top `r` vertices then
/// form the clique.
pub fn split_decomposition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut r = 0;
    for (i, &v) in order.iter().enumerate() {
        if g.degree(v) >= i {
            r = i + 1;
        }
    }
    let head: usize = order[..r].iter().map(|&v| g.degree(v)).sum();
    let tail: usize = order[r..].iter().map(|&v| g.degree(v)).sum();
    if head != r * r.saturating_sub(1) + tail {
        return None;
    }
    let mut clique = order[..r].to_vec();
    let mut independent = order[r..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    debug_assert!(is_clique(g, &clique) && is_independent(g, &independent));
    Some((clique, independent))
}

pub fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

fn split_obstruction(g: &Graph) -> Option<Obstruction> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c0, d0) in &edges[i + 1..] {
            if c0 == a || c0 == b || d0 == a || d0 == b {
                continue;
            }
            for (c, d) in [(c0, d0), (d0, c0)] {
                if g.has_edge(a, c) || g.has_edge(b, d) {
                    continue;
                }
                match (g.has_edge(a, d), g.has_edge(b, c)) {
                    (false, false) => return Some(Obstruction::new(ObstructionKind::TwoK2, &[a, b, c, d])),
                    (true, true) => return Some(Obstruction::new(ObstructionKind::C4, &[a, b, c, d])),
                    _ => {}
                }
            }
        }
    }
    // 2K2- and C4-free: look for an induced C5 e-a-b-c-d-e
    for e in 0..g.n() {
        let ne = g.neighbors(e);
        for &a in ne {
            for &d in ne {
                if a == d || g.has_edge(a, d) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if b == e || g.has_edge(b, e) || g.has_edge(b, d) {
                        continue;
                    }
                    for &c in g.neighbors(b) {
                        if c != a && c != e && g.has_edge(c, d) && !g.has_edge(c, e) && !g.has_edge(c, a) {
                            return Some(Obstruction::new(ObstructionKind::C5, &[e, a, b, c, d]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Universal-vertex peeling: `Ok(())` if every connected induced stage has a
/// universal vertex, otherwise an induced P4 or C4 found in the first stage
/// that lacks one.
pub fn trivially_perfect_witness(g: &Graph) -> Result<(), Obstruction> {
    let n = g.n();
    // label[v] = id of the stage v currently belongs to, usize::MAX once peeled
    let mut label = vec![usize::MAX; n];
    let mut stages: Vec<Vec<usize>> = Vec::new();
    let mut deg = vec![0usize; n];
    let mut stack = Vec::new();

    let split_into_components =
        |members: &[usize], label: &mut Vec<usize>, stages: &mut Vec<Vec<usize>>, stack: &mut Vec<usize>| {
            let marker = usize::MAX - 1;
            for &v in members {
                label[v] = marker;
            }
            for &s in members {
                if label[s] != marker {
                    continue;
                }
                let id = stages.len();
                label[s] = id;
                stack.push(s);
                let mut comp = Vec::new();
                while let Some(u) = stack.pop() {
                    comp.push(u);
                    for &w in g.neighbors(u) {
                        if label[w] == marker {
                            label[w] = id;
                            stack.push(w);
                        }
                    }
                }
                stages.push(comp);
            }
        };

    let all: Vec<usize> = (0..n).collect();
    split_into_components(&all, &mut label, &mut stages, &mut stack);
    let mut next = 0;
    while next < stages.len() {
        let id = next;
        next += 1;
        let comp = core::mem::take(&mut stages[id]);
        if comp.len() <= 2 {
            continue;
        }
        for &v in &comp {
            deg[v] = g.neighbors(v).iter().filter(|&&w| label[w] == id).count();
        }
        let size = comp.len();
        let rest: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] + 1 < size).collect();
        if rest.len() == size {
            return Err(stage_obstruction(g, &comp, &label, id, &deg));
        }
        for &v in &comp {
            label[v] = usize::MAX;
        }
        split_into_components(&rest, &mut label, &mut stages, &mut stack);
    }
    Ok(())
}

fn stage_obstruction(g: &Graph, comp: &[usize], label: &[usize], id: usize, deg: &[usize]) -> Obstruction {
    let inside = |w: usize| label[w] == id;
    let v = *comp
        .iter()
        .max_by(|&&a, &&b| deg[a].cmp(&deg[b]).then(b.cmp(&a)))
        .unwrap();
    for &x in g.neighbors(v).iter().filter(|&&x| inside(x)) {
        let Some(&u) = g
            .neighbors(x)
            .iter()
            .find(|&&u| inside(u) && u != v && !g.has_edge(u, v))
        else {
            continue;
        };
        let y = *g
            .neighbors(v)
            .iter()
            .find(|&&y| inside(y) && y != x && !g.has_edge(x, y))
            .expect("x cannot dominate N[v] and u while deg(x) <= deg(v)");
        let kind = if g.has_edge(u, y) {
            ObstructionKind::C4
        } else {
            ObstructionKind::P4
        };
        return Obstruction::new(kind, &[u, x, v, y]);
    }
    unreachable!("connected stage without universal vertex has a vertex at distance two from v")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn membership_examples() {
        let k3_plus_2 = graph(5, &[(0, 1), (1, 2), (0, 2)]);
        assert!(is_member(GraphClass::CliquePlusIS, &k3_plus_2));
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(!is_member(GraphClass::Split, &c4));
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(!is_member(GraphClass::Starforest, &p4));
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(is_member(GraphClass::TriviallyPerfect, &star));
        assert!(is_member(GraphClass::Split, &p4));
        assert!(is_member(GraphClass::Starforest, &Graph::new(0)));
    }

    #[test]
    fn obstruction_examples() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let o = find_obstruction(GraphClass::TriviallyPerfect, &p4).unwrap();
        assert_eq!(o.kind, ObstructionKind::P4);
        assert!(o.verify(&p4));
        assert!(o.vertices == vec![0, 1, 2, 3] || o.vertices == vec![3, 2, 1, 0]);

        let two_k2 = graph(4, &[(0, 1), (2, 3)]);
        let o = find_obstruction(GraphClass::Split, &two_k2).unwrap();
        assert_eq!(o.kind, ObstructionKind::TwoK2);
        assert!(o.verify(&two_k2));

        let mut k4 = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(find_obstruction(GraphClass::CliquePlusIS, &k4), None);

        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let o = find_obstruction(GraphClass::Split, &c5).unwrap();
        assert_eq!(o.kind, ObstructionKind::C5);
        assert!(o.verify(&c5));

        let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let o = find_obstruction(GraphClass::Starforest, &triangle).unwrap();
        assert_eq!(o.kind, ObstructionKind::Triangle);
        assert!(o.verify(&triangle));
    }

    #[test]
    fn split_decomposition_examples() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(split_decomposition(&p4), Some((vec![1, 2], vec![0, 3])));
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let (k, i) = split_decomposition(&k3).unwrap();
        assert!(is_clique(&k3, &k) && is_independent(&k3, &i) && k.len() + i.len() == 3);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(split_decomposition(&c4), None);
    }
}
