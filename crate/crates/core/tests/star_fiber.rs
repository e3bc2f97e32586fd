mod common;

use bridged_labeling::boundary::{entrance, exits, total_boundary};
use bridged_labeling::generators::{flat_triangle, glued_triangles, random_instance};
use bridged_labeling::star::{
    build_star, fiber_neighboring_k, fiber_partition, median_vertex, star_labels, FiberPartition,
    Role, Star, StarLabel, StarMetric, FAR,
};
use bridged_labeling::{all_pairs, Graph};

fn setup(g: &Graph) -> (Vec<Vec<u32>>, Star, FiberPartition) {
    let d = all_pairs(g).unwrap();
    let star = build_star(g, &d, median_vertex(&d)).unwrap();
    let p = fiber_partition(g, &d, &star).unwrap();
    (common::floyd_warshall(g), star, p)
}

fn instances() -> Vec<Graph> {
    let mut out: Vec<Graph> = (0..4)
        .map(|s| glued_triangles(4, 3 + s as usize, s).unwrap())
        .collect();
    out.push(random_instance(300, 5).unwrap());
    out.push(flat_triangle(7));
    out
}

#[test]
fn median_is_brute_force_argmin() {
    for seed in 0..5 {
        let g = glued_triangles(4, 3, seed).unwrap();
        let fw = common::floyd_warshall(&g);
        let sums: Vec<u32> = fw.iter().map(|r| r.iter().sum()).collect();
        let best = *sums.iter().min().unwrap();
        let expected = sums.iter().position(|&s| s == best).unwrap();
        assert_eq!(median_vertex(&all_pairs(&g).unwrap()), expected);
    }
}

#[test]
fn apexes_match_scan_of_second_sphere() {
    let g = flat_triangle(2);
    let d = all_pairs(&g).unwrap();
    let fw = common::floyd_warshall(&g);
    // Side midpoints have degree 4.
    for m in (0..g.n()).filter(|&v| g.degree(v) == 4) {
        let star = build_star(&g, &d, m).unwrap();
        let scan: Vec<usize> = (0..g.n())
            .filter(|&x| fw[m][x] == 2)
            .filter(|&x| {
                let common: Vec<usize> = g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&y| g.has_edge(y, m))
                    .collect();
                common.len() == 2 && g.has_edge(common[0], common[1])
            })
            .collect();
        let found: Vec<usize> = star.apexes.iter().map(|a| a.vertex).collect();
        assert_eq!(found, scan);
    }
}

#[test]
fn star_labels_rank_neighbors() {
    let g = glued_triangles(4, 4, 1).unwrap();
    let d = all_pairs(&g).unwrap();
    let star = build_star(&g, &d, median_vertex(&d)).unwrap();
    let labels = star_labels(&star);
    assert_eq!(labels[0], (star.center, StarLabel::Empty));
    for (i, &v) in star.neighbors.iter().enumerate() {
        assert_eq!(labels[1 + i], (v, StarLabel::Single(i as u32 + 1)));
    }
    for a in &star.apexes {
        let rank = |v| star.neighbors.iter().position(|&w| w == v).unwrap() as u32 + 1;
        let (_, l) = labels.iter().find(|(v, _)| *v == a.vertex).unwrap();
        assert_eq!(*l, StarLabel::pair(rank(a.pair.0), rank(a.pair.1)));
    }
}

#[test]
fn partition_is_total_isometric_and_starshaped() {
    for g in instances() {
        let (fw, star, p) = setup(&g);
        let m = star.center;
        let mut seen = vec![0; g.n()];
        for (f, members) in p.members.iter().enumerate() {
            for &v in members {
                seen[v] += 1;
                assert_eq!(p.fiber_of[v], f);
            }
            let sub = g.induced(members);
            let inner = common::floyd_warshall(&sub);
            for (i, &a) in members.iter().enumerate() {
                for (j, &b) in members.iter().enumerate() {
                    assert_eq!(inner[i][j], fw[a][b], "F({}) not isometric", p.roots[f]);
                }
                let x = p.roots[f];
                assert!(common::interval(&fw, a, x)
                    .iter()
                    .all(|&w| p.fiber_of[w] == f));
            }
            assert!(2 * members.len() <= g.n());
        }
        assert!(seen.iter().all(|&c| c == 1));
        assert_eq!(p.members[p.fiber_of[m]], vec![m]);
        // The projection rule.
        for u in (0..g.n()).filter(|&u| u != m) {
            let best = star.neighbors.iter().map(|&v| fw[u][v]).min().unwrap();
            let proj: Vec<usize> = star
                .neighbors
                .iter()
                .copied()
                .filter(|&v| fw[u][v] == best)
                .collect();
            let root = p.roots[p.fiber_of[u]];
            match proj.as_slice() {
                [x] => assert_eq!(root, *x),
                [a, b] => {
                    assert!(g.has_edge(root, *a) && g.has_edge(root, *b));
                    assert_eq!(fw[u][root] + 1, best);
                }
                other => panic!("projection {other:?}"),
            }
        }
    }
}

#[test]
fn star_metric_matches_bfs_without_center() {
    for g in instances() {
        let (_, star, p) = setup(&g);
        let verts = star.vertices();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&a| {
                (0..verts.len())
                    .filter(|&j| {
                        a != star.center && verts[j] != star.center && g.has_edge(a, verts[j])
                    })
                    .collect()
            })
            .collect();
        let metric = StarMetric::new(&g, &star);
        for i in 0..verts.len() {
            let dist = common::bfs(&adj, i);
            for j in 0..verts.len() {
                let expected = if i == j {
                    0
                } else if dist[j] == common::INF {
                    FAR
                } else {
                    dist[j]
                };
                assert_eq!(metric.get(i, j), expected);
            }
        }
        for c in (0..p.len()).filter(|&f| p.roles[f] == Role::Cone) {
            let (a, b) = p.cone_panels(&star, c).unwrap();
            for panel in [a, b] {
                assert_eq!(
                    fiber_neighboring_k(&g, &star, p.roots[c], p.roots[panel]),
                    1
                );
            }
        }
        assert_eq!(
            fiber_neighboring_k(&g, &star, star.neighbors[0], star.neighbors[0]),
            0
        );
    }
}

#[test]
fn boundary_trees_match_scan_and_approximate_distances() {
    for g in instances() {
        let (fw, _, p) = setup(&g);
        let d = all_pairs(&g).unwrap();
        for f in (0..p.len()).filter(|&f| p.roles[f] != Role::Center) {
            let tree = total_boundary(&g, &d, &p, f).unwrap();
            let x = p.roots[f];
            let scan: Vec<usize> = (0..g.n())
                .filter(|&v| p.fiber_of[v] == f)
                .filter(|&v| v == x || g.neighbors(v).iter().any(|&w| p.fiber_of[w] != f))
                .collect();
            assert_eq!(tree.members, scan);
            for (i, parent) in tree.parent.iter().enumerate() {
                if let Some(q) = parent {
                    assert!(g.has_edge(tree.members[i], tree.members[*q]));
                    assert_eq!(fw[x][tree.members[*q]] + 1, fw[x][tree.members[i]]);
                }
            }
            for i in 0..tree.len() {
                for j in 0..tree.len() {
                    let dg = fw[tree.members[i]][tree.members[j]];
                    let dt = tree.tree_distance(i, j);
                    assert!(dg <= dt && dt <= 2 * dg, "tree {dt} vs graph {dg}");
                }
            }
        }
    }
}

#[test]
fn entrances_are_closest_projection_vertices() {
    for g in instances() {
        let (fw, star, p) = setup(&g);
        let d = all_pairs(&g).unwrap();
        for c in (0..p.len()).filter(|&f| p.roles[f] == Role::Cone) {
            let (a, b) = p.cone_panels(&star, c).unwrap();
            for panel in [a, b] {
                let tree = total_boundary(&g, &d, &p, panel).unwrap();
                let w = p.roots[panel];
                for &v in &p.members[c] {
                    let best = p.members[panel].iter().map(|&t| fw[v][t]).min().unwrap();
                    let proj: Vec<usize> = p.members[panel]
                        .iter()
                        .copied()
                        .filter(|&t| fw[v][t] == best)
                        .collect();
                    let expected = *proj.iter().min_by_key(|&&t| (fw[w][t], t)).unwrap();
                    assert_eq!(entrance(&d, &p, &tree, v, panel).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn exits_span_the_trimmed_tree() {
    for g in instances() {
        let (fw, _, p) = setup(&g);
        let d = all_pairs(&g).unwrap();
        for f in (0..p.len()).filter(|&f| p.roles[f] == Role::Panel) {
            let tree = total_boundary(&g, &d, &p, f).unwrap();
            let x = tree.root;
            for &u in &p.members[f] {
                let (u1, u2) = exits(&g, &d, &tree, u).unwrap();
                if tree.contains(u) {
                    assert_eq!((u1, u2), (u, u));
                    continue;
                }
                assert!(u1 <= u2);
                let trimmed: Vec<usize> = tree
                    .members
                    .iter()
                    .copied()
                    .filter(|&t| fw[u][t] + fw[t][x] == fw[u][x])
                    .collect();
                let mut covered = Vec::new();
                for e in [u1, u2] {
                    assert!(trimmed.contains(&e));
                    let mut i = tree.position(e).unwrap();
                    covered.push(tree.members[i]);
                    while let Some(q) = tree.parent[i] {
                        i = q;
                        covered.push(tree.members[i]);
                    }
                }
                assert!(trimmed.iter().all(|t| covered.contains(t)), "u = {u}");
                assert!(covered.iter().all(|t| trimmed.contains(t)), "u = {u}");
            }
        }
    }
}
