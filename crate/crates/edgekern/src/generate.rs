//! Seeded generators for class members and planted instances.

use edgekern_core::{canonical, Edge, EdgeSet, Graph, GraphClass, Problem, ProblemInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Knobs for `generate_member_with`; `None` fields are drawn at random.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MemberParams {
    /// Clique size for clique+IS and split graphs.
    pub clique_size: Option<usize>,
    /// Probability of each clique/independent pair in split graphs (default ½).
    pub cross_prob: Option<f64>,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate_member(class: GraphClass, n: usize, seed: u64) -> Graph {
    generate_member_with(class, n, seed, &MemberParams::default())
}

pub fn generate_member_with(class: GraphClass, n: usize, seed: u64, params: &MemberParams) -> Graph {
    let mut rng = rng_for(seed);
    member(class, n, params, &mut rng)
}

fn member(class: GraphClass, n: usize, params: &MemberParams, rng: &mut ChaCha8Rng) -> Graph {
    // structure is built on positions 0..n, then positions get shuffled ids
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut edges: Vec<Edge> = Vec::new();
    let clique_size = |rng: &mut ChaCha8Rng| params.clique_size.unwrap_or_else(|| rng.random_range(0..=n)).min(n);
    match class {
        GraphClass::CliquePlusIS => {
            let c = clique_size(rng);
            for u in 0..c {
                for v in u + 1..c {
                    edges.push((u, v));
                }
            }
        }
        GraphClass::Split => {
            let c = clique_size(rng);
            let p = params.cross_prob.unwrap_or(0.5);
            for u in 0..c {
                for v in u + 1..c {
                    edges.push((u, v));
                }
            }
            for u in 0..c {
                for v in c..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphClass::TriviallyPerfect => {
            // random rooted forest; every vertex is joined to all its ancestors
            let mut parent: Vec<Option<usize>> = vec![None; n];
            for v in 1..n {
                if rng.random_range(0..=v) != 0 {
                    parent[v] = Some(rng.random_range(0..v));
                }
            }
            for v in 0..n {
                let mut a = parent[v];
                while let Some(p) = a {
                    edges.push((p, v));
                    a = parent[p];
                }
            }
        }
        GraphClass::Starforest => {
            let cap = ((2.0 * (n as f64).sqrt()) as usize).max(2);
            let mut start = 0;
            while start < n {
                let size = rng.random_range(1..=cap.min(n - start));
                for leaf in start + 1..start + size {
                    edges.push((start, leaf));
                }
                start += size;
            }
        }
    }
    let mapped: Vec<Edge> = edges.into_iter().map(|(u, v)| canonical(ids[u], ids[v])).collect();
    Graph::from_edges(n, &mapped).expect("generator emits a simple graph")
}

/// A class member perturbed by `r` random edits, positive at budget `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantSpec {
    pub problem: Problem,
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub params: MemberParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub instance: ProblemInstance,
    /// The unperturbed member.
    pub member: Graph,
    /// The edits that were applied; undoing them is a solution.
    pub perturbation: EdgeSet,
    /// Number of edits actually applied (less than requested when the member
    /// has too few candidates).
    pub r: usize,
}

pub fn plant_instance(spec: &PlantSpec) -> Planted {
    let mut rng = rng_for(spec.seed);
    let member = member(spec.problem.class(), spec.n, &spec.params, &mut rng);
    let mut g = member.clone();
    let chosen: Vec<Edge> = match spec.problem.mode() {
        edgekern_core::EditMode::Delete => sample_non_edges(&member, spec.r, &mut rng),
        edgekern_core::EditMode::Add => {
            let edges: Vec<Edge> = member.edges().collect();
            let take = spec.r.min(edges.len());
            let mut picked: Vec<Edge> = rand::seq::index::sample(&mut rng, edges.len(), take)
                .into_iter()
                .map(|i| edges[i])
                .collect();
            picked.sort_unstable();
            picked
        }
    };
    for &(u, v) in &chosen {
        match spec.problem.mode() {
            edgekern_core::EditMode::Delete => g.add_edge(u, v).unwrap(),
            edgekern_core::EditMode::Add => g.remove_edge(u, v).unwrap(),
        };
    }
    let r = chosen.len();
    Planted {
        instance: ProblemInstance::new(spec.problem, g, r as i64),
        member,
        perturbation: chosen.into_iter().collect(),
        r,
    }
}

fn sample_non_edges(g: &Graph, r: usize, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let n = g.n();
    let total = n * n.saturating_sub(1) / 2 - g.m();
    let take = r.min(total);
    let mut picked = EdgeSet::new();
    if total >= 4 * take && n >= 2 {
        while picked.len() < take {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && !g.has_edge(u, v) {
                picked.insert(u, v).unwrap();
            }
        }
    } else {
        let all: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        for i in rand::seq::index::sample(rng, all.len(), take) {
            picked.insert(all[i].0, all[i].1).unwrap();
        }
    }
    picked.to_vec()
}

/// An Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use edgekern_core::is_member;

    #[test]
    fn members_belong_to_their_class() {
        for class in GraphClass::ALL {
            for n in [1, 2, 5, 17, 60] {
                for seed in 0..20 {
                    let g = generate_member(class, n, seed);
                    assert_eq!(g.n(), n);
                    assert!(is_member(class, &g), "{class} n={n} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn single_vertex_starforest() {
        assert_eq!(generate_member(GraphClass::Starforest, 1, 9), Graph::new(1));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = PlantSpec {
            problem: Problem::TpAddition,
            n: 40,
            r: 5,
            seed: 11,
            params: MemberParams::default(),
        };
        assert_eq!(plant_instance(&spec), plant_instance(&spec));
        assert_ne!(
            plant_instance(&spec).instance,
            plant_instance(&PlantSpec {
                seed: 12,
                ..spec.clone()
            })
            .instance
        );
    }

    #[test]
    fn zero_perturbation_is_a_member() {
        for problem in Problem::ALL {
            let p = plant_instance(&PlantSpec {
                problem,
                n: 12,
                r: 0,
                seed: 3,
                params: MemberParams::default(),
            });
            assert_eq!(p.instance.k, 0);
            assert!(is_member(problem.class(), &p.instance.graph));
        }
    }

    #[test]
    fn perturbation_is_capped() {
        let p = plant_instance(&PlantSpec {
            problem: Problem::SplitAddition,
            n: 3,
            r: 10,
            seed: 0,
            params: MemberParams {
                clique_size: Some(2),
                ..Default::default()
            },
        });
        assert!(p.r <= 3);
        assert_eq!(p.instance.k, p.r as i64);
    }
}
