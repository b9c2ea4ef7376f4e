use edgekern::generate::{plant_instance, MemberParams, PlantSpec};
use edgekern::harness::{check_equivalence, planted_case, Equivalence};
use edgekern_core::kernel::star::{apply_cleanup_rule, center_candidates};
use edgekern_core::kernel::{KernelState, RuleOutcome};
use edgekern_core::oracle::{graph_from_mask, solve_exact, CostTable};
use edgekern_core::{
    is_member, kernelize, EdgeSet, EditMode, Graph, GraphClass, KernelResult, Problem, ProblemInstance,
};

#[test]
fn planted_instances_are_positive_at_their_budget() {
    for problem in Problem::ALL {
        for seed in 0..150u64 {
            let n = 3 + (seed as usize % 12);
            let r = seed as usize % 5;
            let p = plant_instance(&PlantSpec {
                problem,
                n,
                r,
                seed,
                params: MemberParams::default(),
            });
            let inst = &p.instance;
            assert_eq!(inst.k, p.r as i64);
            let reverted = inst.graph.apply_edits(&p.perturbation, problem.mode()).unwrap();
            assert_eq!(reverted, p.member);
            assert!(is_member(problem.class(), &reverted));
            let d = solve_exact(inst).unwrap();
            assert!(d.answer, "{problem} seed {seed}");
            assert!(d.witness_is_valid(problem, &inst.graph, inst.k));
            assert_eq!(
                check_equivalence(problem, &inst.graph, inst.k),
                Equivalence::Match(true)
            );
            // negatives come from the same instances at smaller budgets
            if inst.k > 0 {
                assert!(matches!(
                    check_equivalence(problem, &inst.graph, inst.k - 1),
                    Equivalence::Match(_)
                ));
            }
        }
    }
}

#[test]
fn planted_instances_are_deterministic() {
    for problem in Problem::ALL {
        let a = planted_case(problem, 17, 10, 500, 0, 20);
        let b = planted_case(problem, 17, 10, 500, 0, 20);
        assert_eq!(a, b);
    }
}

/// Whether the starforest `h` has a choice of star centers containing `c`.
fn admits_centers(h: &Graph, c: &[bool]) -> bool {
    h.connected_components().iter().all(|comp| match comp.len() {
        1 => true,
        2 => !(c[comp[0]] && c[comp[1]]),
        _ => comp.iter().all(|&v| !c[v] || h.degree(v) >= 2),
    })
}

#[test]
fn some_optimal_solution_keeps_the_candidate_centers() {
    for n in 0..=6usize {
        let table = CostTable::build(Problem::StarDeletion, n).unwrap();
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph_from_mask(n, mask);
            let mut st = KernelState::new(&ProblemInstance::new(Problem::StarDeletion, g.clone(), 0));
            if apply_cleanup_rule(&mut st) != RuleOutcome::Unchanged {
                continue;
            }
            let c = center_candidates(&g);
            let opt = table.cost(&g);
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let mut found = false;
            for pick in 0..1u32 << edges.len() {
                if pick.count_ones() as usize != opt {
                    continue;
                }
                let f: EdgeSet = (0..edges.len())
                    .filter(|&i| pick >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect();
                let h = g.apply_edits(&f, EditMode::Delete).unwrap();
                if is_member(GraphClass::Starforest, &h) && admits_centers(&h, &c) {
                    found = true;
                    break;
                }
            }
            assert!(found, "n={n} edges={edges:?}");
        }
    }
}

#[test]
fn positive_star_kernels_have_many_leaves() {
    let mut reduced = 0;
    for seed in 0..400u64 {
        let inst = planted_case(Problem::StarDeletion, seed, 10, 300, 0, 20).instance;
        if let KernelResult::Reduced(r) = kernelize(&inst).result {
            reduced += 1;
            let leaves = (0..r.graph.n()).filter(|&v| r.graph.degree(v) == 1).count() as i64;
            assert!(
                leaves >= r.graph.m() as i64 - 3 * r.k,
                "seed {seed}: {leaves} leaves, m={} k={}",
                r.graph.m(),
                r.k
            );
        }
    }
    assert!(reduced > 100);
}
