mod common;

use common::{brute_classes, brute_canonical, encodings, from_fixed, labeled_counts, orbit_stabilizer_counts};
use gwloc::fixed_graphs::{canonical_form, enumerate_graphs, enumerate_skeletons};
use proptest::prelude::*;

#[test]
fn classes_and_aut_orders_match_brute_force() {
    for n in 1..=3 {
        for d in 1..=3 {
            for k in 0..=2 {
                let graphs = enumerate_graphs(n, d, k);
                let brute = brute_classes(n, d, k);
                assert_eq!(graphs.len(), brute.len(), "class count for (n,d,k)=({n},{d},{k})");
                assert_eq!(encodings(&graphs), brute.keys().cloned().collect());
                for g in &graphs {
                    let (enc, stab) = brute_canonical(&from_fixed(g));
                    assert_eq!(brute[&enc], stab);
                    assert_eq!(g.aut_order, stab, "aut order of {}", g.dump_line());
                }
            }
        }
    }
}

#[test]
fn orbit_stabilizer_reproduces_labeled_counts() {
    for n in 1..=3 {
        for d in 1..=3 {
            for k in 0..=2 {
                let graphs = enumerate_graphs(n, d, k);
                assert_eq!(
                    orbit_stabilizer_counts(&graphs),
                    labeled_counts(n, d, k),
                    "(n,d,k)=({n},{d},{k})"
                );
            }
        }
    }
}

#[test]
fn p4_spot_counts_match_brute_force() {
    assert_eq!(brute_classes(4, 1, 0).len(), 10);
    assert_eq!(brute_classes(4, 2, 0).len(), 60);
    assert_eq!(enumerate_graphs(4, 1, 0).len(), 10);
    assert_eq!(enumerate_graphs(4, 2, 0).len(), 60);
}

#[test]
fn counts_are_monotone() {
    let count = |n, d| enumerate_graphs(n, d, 1).len();
    for n in 1..=4 {
        for d in 1..=3 {
            assert!(count(n, d) <= count(n + 1, d));
            assert!(count(n, d) <= count(n, d + 1));
        }
    }
}

#[test]
fn every_graph_satisfies_its_invariants() {
    for (n, d, k) in [(4, 4, 0), (2, 3, 3), (5, 2, 2), (1, 4, 1)] {
        for g in enumerate_graphs(n, d, k) {
            g.validate(n, d, k).unwrap();
        }
    }
}

#[test]
fn skeleton_groups_have_the_stored_order() {
    for s in enumerate_skeletons(3, 4) {
        assert_eq!(s.graph.aut_order, s.automorphisms.len() as u64);
    }
}

proptest! {
    #[test]
    fn canonical_form_is_invariant_under_vertex_relabeling(
        idx in 0usize..10_000,
        shuffle in proptest::collection::vec(any::<u32>(), 5),
    ) {
        let graphs = enumerate_graphs(3, 4, 1);
        let g = &graphs[idx % graphs.len()];
        let nv = g.vertices.len();
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&v| shuffle[v]);
        // order[new] = old
        let mut position = vec![0; nv];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut h = g.clone();
        h.vertices = order.iter().map(|&old| g.vertices[old].clone()).collect();
        for e in &mut h.edges {
            e.a = position[e.a];
            e.b = position[e.b];
        }
        prop_assert_eq!(canonical_form(g), canonical_form(&h));
    }
}
