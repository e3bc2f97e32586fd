mod common;

use bridged_labeling::codec::{
    decode, deserialize, encode_graph, encode_graph_traced, serialize, LevelRecord, SidePart,
    VertexLabel,
};
use bridged_labeling::generators::{burned_lozenge, glued_triangles, random_instance, random_tree};
use bridged_labeling::invariants::{check_invariants, SuiteOptions};
use bridged_labeling::star::StarLabel;
use bridged_labeling::tree_labels::{tree_decode, TreeLabel};
use bridged_labeling::verify::{verify, Pairs};
use bridged_labeling::{check_class, Graph};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn side() -> impl Strategy<Value = SidePart> {
    (
        prop::collection::vec((0u32..5000, 0u32..300), 0..6),
        any::<u32>(),
    )
        .prop_map(|(entries, dist)| SidePart {
            tree: TreeLabel { entries },
            dist,
        })
}

fn star_label() -> impl Strategy<Value = StarLabel> {
    prop_oneof![
        Just(StarLabel::Empty),
        (1u32..200).prop_map(StarLabel::Single),
        (1u32..200, 1u32..200)
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| StarLabel::pair(a, b)),
    ]
}

fn label() -> impl Strategy<Value = VertexLabel> {
    let level = (
        any::<u32>(),
        any::<u32>(),
        star_label(),
        prop::option::of(side()),
        prop::option::of(side()),
    )
        .prop_map(|(median, dist, star, left, right)| LevelRecord {
            median,
            dist,
            star,
            left,
            right,
        });
    (any::<u32>(), prop::collection::vec(level, 0..8))
        .prop_map(|(id, levels)| VertexLabel { id, levels })
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn random_instances_meet_stretch_bounds(n in 1usize..160, seed in any::<u64>()) {
        let g = random_instance(n, seed).unwrap();
        prop_assert!(check_class(&g).accepted());
        let (labels, trace) = encode_graph_traced(&g).unwrap();
        let report = verify(&g, &labels, &trace, Pairs::All);
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn invariants_hold_on_generated_instances(kind in 0u8..3, size in 2usize..7, seed in any::<u64>()) {
        let g = match kind {
            0 => random_instance(size * 25, seed).unwrap(),
            1 => glued_triangles(size.min(5), size, seed).unwrap(),
            _ => burned_lozenge(size, size + 1, seed, size * size).unwrap(),
        };
        let report = check_invariants(&g, SuiteOptions { seed, ..SuiteOptions::default() });
        let failing: Vec<_> = report.checks.iter().filter(|c| c.failures > 0).collect();
        prop_assert!(report.passed(), "{:?}", failing);
    }

    #[test]
    fn trees_are_exact(n in 1usize..200, seed in any::<u64>()) {
        let g = random_tree(n, seed).unwrap();
        let labels = encode_graph(&g).unwrap();
        let adj = common::adjacency(&g);
        let u = (seed % n as u64) as usize;
        let dist = common::bfs(&adj, u);
        for v in 0..n {
            prop_assert_eq!(decode(&labels[u], &labels[v]), dist[v]);
        }
    }

    #[test]
    fn decode_is_symmetric(n in 2usize..120, seed in any::<u64>()) {
        let g = random_instance(n, seed).unwrap();
        let labels = encode_graph(&g).unwrap();
        for u in 0..n {
            let v = (u * 7 + 3) % n;
            prop_assert_eq!(decode(&labels[u], &labels[v]), decode(&labels[v], &labels[u]));
        }
    }

    #[test]
    fn generators_are_deterministic(n in 1usize..120, seed in any::<u64>()) {
        prop_assert_eq!(random_instance(n, seed).unwrap(), random_instance(n, seed).unwrap());
        prop_assert_eq!(random_tree(n, seed).unwrap(), random_tree(n, seed).unwrap());
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn wire_round_trip(l in label()) {
        let bytes = serialize(&l);
        prop_assert_eq!(deserialize(&bytes).unwrap(), l);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        let _ = deserialize(&bytes);
    }

    #[test]
    fn graph_text_round_trip(n in 1usize..40, edges in prop::collection::vec((0usize..40, 0usize..40), 0..80)) {
        let edges: std::collections::BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u < n && v < n && u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn tree_label_of_self_is_zero(entries in prop::collection::vec((0u32..100, 0u32..100), 1..6)) {
        let l = TreeLabel { entries };
        let expected = l.entries.iter().map(|e| 2 * e.1).min().unwrap();
        prop_assert_eq!(tree_decode(&l, &l), expected);
    }
}
