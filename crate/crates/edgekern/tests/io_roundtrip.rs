use edgekern::generate::generate_member;
use edgekern::io::{parse_graph, write_graph, write_graph_with_comments};
use edgekern_core::{Graph, GraphClass};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..120).prop_map(move |pairs| {
            let mut g = Graph::new(n);
            for (u, v) in pairs {
                if u != v {
                    let _ = g.add_edge(u, v);
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(g in arb_graph(), comment in "[ -~]{0,20}") {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&write_graph_with_comments(&g, &[comment])).unwrap(), g);
    }

    #[test]
    fn generated_members_round_trip(n in 1usize..200, seed in any::<u64>()) {
        for class in GraphClass::ALL {
            let g = generate_member(class, n, seed);
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }
}

#[test]
fn whitespace_and_blank_lines_are_tolerated() {
    let g = parse_graph("  3   2 \n\n 0\t1\n  # note\n2 1\n").unwrap();
    assert_eq!(g, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
}
