mod common;

use std::collections::BTreeSet;

use bridged_labeling::blocks::blocks;
use bridged_labeling::generators::{burned_lozenge, flat_triangle, glued_triangles, random_tree};
use bridged_labeling::metric::{
    ball, bfs_distances, interval, is_convex, metric_projection, quasi_median,
};
use bridged_labeling::star::{build_star, fiber_partition, median_vertex, Role};
use bridged_labeling::{all_pairs, Graph, VertexSet};
use rand::Rng;

fn assert_matches_floyd(g: &Graph) {
    let fw = common::floyd_warshall(g);
    let d = all_pairs(g).unwrap();
    for u in 0..g.n() {
        for v in 0..g.n() {
            assert_eq!(d.get(u, v), fw[u][v], "d({u},{v})");
        }
    }
}

#[test]
fn bfs_from_corner_of_small_triangle() {
    let g = flat_triangle(2);
    let fw = common::floyd_warshall(&g);
    assert_eq!(bfs_distances(&g, 0).unwrap(), fw[0]);
}

#[test]
fn all_pairs_agrees_with_floyd_warshall() {
    assert_matches_floyd(&glued_triangles(4, 6, 11).unwrap());
    assert_matches_floyd(&burned_lozenge(5, 7, 2, 12).unwrap());
    assert_matches_floyd(&random_tree(80, 5).unwrap());
}

#[test]
fn intervals_match_enumeration() {
    let g = glued_triangles(3, 5, 4).unwrap();
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    for u in 0..g.n() {
        for v in 0..g.n() {
            assert_eq!(
                interval(&d, u, v).as_slice(),
                common::interval(&fw, u, v).as_slice()
            );
        }
    }
    // Two corners of the side-2 triangle span one side.
    let t = flat_triangle(2);
    let dt = all_pairs(&t).unwrap();
    let corners: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) == 2).collect();
    assert_eq!(interval(&dt, corners[0], corners[1]).len(), 3);
}

#[test]
fn quasi_median_of_tree_triples_is_the_median() {
    let g = random_tree(60, 9).unwrap();
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    let mut rng = common::rng(3);
    for _ in 0..300 {
        let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..g.n()));
        let median = (0..g.n())
            .min_by_key(|&w| fw[a][w] + fw[b][w] + fw[c][w])
            .unwrap();
        assert_eq!(
            quasi_median(&d, a, b, c),
            (median, median, median),
            "triple ({a},{b},{c})"
        );
    }
}

#[test]
fn quasi_median_is_a_routed_metric_triangle() {
    let g = glued_triangles(4, 5, 2).unwrap();
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    let mut rng = common::rng(4);
    for _ in 0..300 {
        let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..g.n()));
        let (x, y, z) = quasi_median(&d, a, b, c);
        assert_eq!(fw[a][b], fw[a][x] + fw[x][y] + fw[y][b]);
        assert_eq!(fw[b][c], fw[b][y] + fw[y][z] + fw[z][c]);
        assert_eq!(fw[a][c], fw[a][x] + fw[x][z] + fw[z][c]);
        // Metric triangle: intervals between the corners meet only at corners.
        let ixy: BTreeSet<usize> = common::interval(&fw, x, y).into_iter().collect();
        let ixz: BTreeSet<usize> = common::interval(&fw, x, z).into_iter().collect();
        assert_eq!(ixy.intersection(&ixz).copied().collect::<Vec<_>>(), vec![x]);
        assert!(fw[x][y] == fw[y][z] && fw[y][z] == fw[x][z]);
    }
}

#[test]
fn convexity_matches_interval_enumeration() {
    let g = glued_triangles(3, 4, 8).unwrap();
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    let mut rng = common::rng(5);
    for round in 0..400 {
        let set: VertexSet = if round % 2 == 0 {
            let size = rng.gen_range(1..8);
            (0..size).map(|_| rng.gen_range(0..g.n())).collect()
        } else {
            ball(&d, rng.gen_range(0..g.n()), rng.gen_range(0..4))
        };
        assert_eq!(
            is_convex(&g, &d, &set),
            common::is_convex(&fw, set.as_slice()),
            "{set:?}"
        );
    }
}

#[test]
fn balls_are_convex() {
    let g = burned_lozenge(6, 6, 1, 10).unwrap();
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    for v in (0..g.n()).step_by(5) {
        for k in 0..4 {
            assert!(common::is_convex(&fw, ball(&d, v, k).as_slice()));
        }
    }
}

#[test]
fn projection_on_closed_neighborhood_is_one_vertex_or_an_edge() {
    let g = glued_triangles(4, 4, 3).unwrap();
    let d = all_pairs(&g).unwrap();
    let m = median_vertex(&d);
    let mut closed: Vec<usize> = g.neighbors(m).to_vec();
    closed.push(m);
    let star = build_star(&g, &d, m).unwrap();
    let p = fiber_partition(&g, &d, &star).unwrap();
    let mut cone_seen = false;
    for u in 0..g.n() {
        let proj = metric_projection(&d, u, &closed).unwrap();
        match proj.as_slice() {
            [_] => {}
            [a, b] => {
                assert!(g.has_edge(*a, *b));
                assert_eq!(p.roles[p.fiber_of[u]], Role::Cone);
                cone_seen = true;
            }
            other => panic!("projection of {u} is {other:?}"),
        }
    }
    assert!(cone_seen);
}

fn block_sets(g: &Graph) -> BTreeSet<BTreeSet<(usize, usize)>> {
    blocks(g)
        .blocks
        .iter()
        .map(|b| {
            g.edges()
                .filter(|(u, v)| b.vertices.contains(u) && b.vertices.contains(v))
                .collect()
        })
        .collect()
}

#[test]
fn blocks_of_intervals_match_oracle() {
    let mut with_cut = 0;
    for seed in 0..6 {
        let g = burned_lozenge(6, 5, seed, 14).unwrap();
        let d = all_pairs(&g).unwrap();
        let mut rng = common::rng(seed);
        for _ in 0..40 {
            let (u, v) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
            let span = interval(&d, u, v);
            let h = g.induced(span.as_slice());
            if h.n() < 2 {
                continue;
            }
            let decomposition = blocks(&h);
            with_cut += usize::from(!decomposition.articulation.is_empty());
            assert_eq!(block_sets(&h), common::block_edge_sets(&h));
        }
    }
    assert!(with_cut > 0, "no interval with a cut vertex was exercised");
}

#[test]
fn blocks_of_random_small_graphs() {
    let mut rng = common::rng(12);
    for _ in 0..300 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.15..0.6);
        let g = common::random_connected(&mut rng, n, p);
        assert_eq!(
            block_sets(&g),
            common::block_edge_sets(&g),
            "{}",
            g.to_text()
        );
        let art: Vec<usize> = (0..n)
            .filter(|&x| {
                let rest: Vec<usize> = (0..n).filter(|&v| v != x).collect();
                !g.induced(&rest).is_connected()
            })
            .collect();
        assert_eq!(blocks(&g).articulation, art);
    }
}
