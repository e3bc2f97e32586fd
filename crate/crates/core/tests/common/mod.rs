//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use bridged_labeling::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn interval(d: &[Vec<u32>], u: usize, v: usize) -> Vec<usize> {
    (0..d.len())
        .filter(|&w| d[u][w] + d[w][v] == d[u][v])
        .collect()
}

pub fn is_convex(d: &[Vec<u32>], set: &[usize]) -> bool {
    set.iter().all(|&u| {
        set.iter()
            .all(|&v| interval(d, u, v).iter().all(|w| set.contains(w)))
    })
}

pub fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = vec![INF; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if dist[w] == INF {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

pub fn has_k4(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !(g.has_edge(a, c) && g.has_edge(b, c)) {
                    continue;
                }
                if (c + 1..n).any(|x| g.has_edge(a, x) && g.has_edge(b, x) && g.has_edge(c, x)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Some isometric cycle of length at least 4, if any. Isometric cycles are
/// induced, and in a cycle of length `L` every subpath of length at most
/// `L / 2` is a shortest path, so only paths meeting both conditions are
/// extended.
pub fn long_isometric_cycle(g: &Graph) -> Option<Vec<usize>> {
    let d = floyd_warshall(g);
    let n = g.n();
    fn extend(g: &Graph, d: &[Vec<u32>], path: &mut Vec<usize>, found: &mut Option<Vec<usize>>) {
        if found.is_some() {
            return;
        }
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w <= start || path.contains(&w) {
                continue;
            }
            // w may touch only `last` and, when closing, `start`.
            let inner = path.get(1..path.len() - 1).unwrap_or(&[]);
            if inner.iter().any(|&p| g.has_edge(p, w)) {
                continue;
            }
            path.push(w);
            let len = path.len() - 1;
            let geodesic = (1..=len.div_ceil(2).max(1))
                .all(|gap| (gap..=len).all(|j| d[path[j - gap]][path[j]] == gap as u32));
            if !geodesic {
                path.pop();
                continue;
            }
            if path.len() >= 4 && g.has_edge(w, start) && path[1] < w && cycle_is_isometric(d, path)
            {
                *found = Some(path.clone());
                return;
            }
            if path.len() == 2 || !g.has_edge(w, start) {
                extend(g, d, path, found);
            }
            path.pop();
        }
    }
    let mut found = None;
    for s in 0..n {
        extend(g, &d, &mut vec![s], &mut found);
        if found.is_some() {
            break;
        }
    }
    found
}

pub fn cycle_is_isometric(d: &[Vec<u32>], cycle: &[usize]) -> bool {
    let l = cycle.len();
    (0..l).all(|i| {
        (i + 1..l).all(|j| {
            let along = (j - i).min(l - (j - i)) as u32;
            d[cycle[i]][cycle[j]] == along
        })
    })
}

/// Connected graph on `n` vertices with edge probability `p`, retried until
/// connected.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Edge sets of the blocks of a connected graph: two edges share a block
/// unless removing some vertex puts them in different components.
pub fn block_edge_sets(g: &Graph) -> BTreeSet<BTreeSet<(usize, usize)>> {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut comp_without = Vec::with_capacity(n);
    for x in 0..n {
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in (0..n).filter(|&s| s != x) {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if w != x && comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp_without.push(comp);
    }
    let side = |e: (usize, usize), x: usize| if e.0 == x { e.1 } else { e.0 };
    let together = |e: (usize, usize), f: (usize, usize)| {
        (0..n).all(|x| comp_without[x][side(e, x)] == comp_without[x][side(f, x)])
    };
    let mut out = BTreeSet::new();
    let mut assigned = vec![false; edges.len()];
    for i in 0..edges.len() {
        if assigned[i] {
            continue;
        }
        let mut block = BTreeSet::new();
        for j in i..edges.len() {
            if !assigned[j] && together(edges[i], edges[j]) {
                assigned[j] = true;
                block.insert(edges[j]);
            }
        }
        out.insert(block);
    }
    out
}
