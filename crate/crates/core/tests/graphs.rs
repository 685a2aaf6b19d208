//! Signed-graph sweeps: fixed-point counts, fracket structure and the
//! complete-graph subgroup results.

use chipfire::duality::analyze_fixed_points;
use chipfire::fixtures::run3_graph;
use chipfire::fracket::{
    cyclic_check, verify_largest_invariant_factor, zero_fracket_size_formula, Side,
};
use chipfire::lattice::{AbelianGroup, DEFAULT_ENUMERATION_CAP};
use chipfire::mmatrix::is_m_matrix;
use chipfire::sgraph::{
    base_graph, kn_z2_subgroup, scan_critical_groups, spanning_tree_count, sweep, sweep_graph,
    verify_half_n_integrality, Edge, Kind, SignedGraph, SweepItem,
};
use num_traits::Signed;
use proptest::prelude::*;

fn small_sweeps() -> Vec<(String, SweepItem)> {
    let mut out = Vec::new();
    for it in sweep_graph(&run3_graph(), DEFAULT_ENUMERATION_CAP).unwrap() {
        out.push((format!("triangle {}", it.pattern), it));
    }
    for n in [4, 5, 6] {
        for it in sweep(Kind::Cycle, n, DEFAULT_ENUMERATION_CAP).unwrap() {
            out.push((format!("C{n} {}", it.pattern), it));
        }
    }
    for it in sweep(Kind::Complete, 4, DEFAULT_ENUMERATION_CAP).unwrap() {
        out.push((format!("K4 {}", it.pattern), it));
    }
    out
}

#[test]
fn fixed_point_counts_on_small_sweeps() {
    let mut nonzero = 0;
    for (label, it) in small_sweeps() {
        let a = analyze_fixed_points(&it.pair).unwrap();
        assert!(a.consistent(), "{label}: {a:?}");
        nonzero += usize::from(!a.fixed_points.is_empty());
    }
    assert!(nonzero > 0);
}

#[test]
fn fixed_point_counts_on_sampled_k6() {
    let items = sweep(Kind::Complete, 6, DEFAULT_ENUMERATION_CAP).unwrap();
    for it in items.iter().step_by(37) {
        let a = analyze_fixed_points(&it.pair).unwrap();
        assert!(a.consistent(), "K6 {}: {a:?}", it.pattern);
    }
}

#[test]
fn fracket_structure_on_small_sweeps() {
    for (label, it) in small_sweeps() {
        let p = &it.pair;
        assert!(
            verify_largest_invariant_factor(p).unwrap().holds(),
            "{label}"
        );
        let f = zero_fracket_size_formula(p).unwrap();
        assert!(f.agrees(), "{label}: {f:?}");
        for side in [Side::L, Side::M] {
            assert!(
                cyclic_check(p, side).unwrap().consistent(),
                "{label} side {side}"
            );
        }
    }
}

#[test]
fn generated_m_matrices_count_spanning_trees() {
    for (kind, n) in [
        (Kind::Cycle, 4),
        (Kind::Cycle, 6),
        (Kind::Complete, 4),
        (Kind::Complete, 5),
    ] {
        for it in sweep(kind, n, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .iter()
            .take(8)
        {
            assert!(is_m_matrix(it.pair.m().matrix()));
            assert_eq!(it.pair.det_m().abs(), spanning_tree_count(kind, n));
        }
    }
}

#[test]
fn half_n_integrality_k4_k6() {
    for (n, count) in [(4, 8), (6, 1024)] {
        let r = verify_half_n_integrality(n, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.patterns, count);
        assert!(r.holds(), "{r:?}");
    }
}

#[test]
fn k4_subgroup_and_groups() {
    let items = sweep(Kind::Complete, 4, DEFAULT_ENUMERATION_CAP).unwrap();
    for it in &items {
        assert!(kn_z2_subgroup(&it.pair, 4).unwrap().holds());
    }
    let scan = scan_critical_groups(&items, 2).unwrap();
    assert!(scan.holds());
    assert!(scan.groups.contains(&AbelianGroup::from_i64(&[4, 4])));
}

#[test]
fn cycle_patterns_are_switching_equivalent() {
    // off the sink a cycle is a path, so switching vertex signs turns any
    // pattern into the all-positive one and K(L) does not change
    for it in sweep(Kind::Cycle, 6, DEFAULT_ENUMERATION_CAP).unwrap() {
        assert_eq!(
            it.pair.l_class_index().group(),
            AbelianGroup::from_i64(&[6]),
            "pattern {}",
            it.pattern
        );
    }
}

#[test]
fn base_graph_shapes() {
    assert_eq!(base_graph(Kind::Complete, 6).unwrap().edges().len(), 15);
    assert_eq!(base_graph(Kind::Cycle, 6).unwrap().edges().len(), 6);
    assert!(base_graph(Kind::Cycle, 2).is_err());
}

fn arb_graph() -> impl Strategy<Value = SignedGraph> {
    (3usize..7)
        .prop_flat_map(|n| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..n);
            (
                Just(n),
                tree,
                extra,
                0..n,
                proptest::collection::vec(any::<bool>(), n - 1),
            )
        })
        .prop_map(|(n, tree, extra, sink, tree_signs)| {
            let mut edges: Vec<Edge> = tree
                .iter()
                .enumerate()
                .map(|(i, ix)| Edge {
                    u: ix.index(i + 1),
                    v: i + 1,
                    sign: if tree_signs[i] { 1 } else { -1 },
                })
                .collect();
            edges.extend(
                extra
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, s)| Edge {
                        u,
                        v,
                        sign: if s { 1 } else { -1 },
                    }),
            );
            SignedGraph::new(n, sink, edges).unwrap()
        })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        prop_assert_eq!(SignedGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(SignedGraph::parse(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn reduced_m_is_an_m_matrix(g in arb_graph()) {
        let (_, m) = g.reduced_matrices();
        prop_assert!(is_m_matrix(&m));
    }

    #[test]
    fn sink_signs_are_irrelevant(g in arb_graph()) {
        let flipped: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| if e.u == g.sink() || e.v == g.sink() { Edge { sign: -e.sign, ..*e } } else { *e })
            .collect();
        let h = SignedGraph::new(g.vertex_count(), g.sink(), flipped).unwrap();
        prop_assert_eq!(g.reduced_matrices(), h.reduced_matrices());
    }
}
