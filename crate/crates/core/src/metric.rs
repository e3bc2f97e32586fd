//! Hop distances and the metric primitives built on them: intervals,
//! metric projections, quasi-medians and convexity.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// Marker for an unreachable vertex in a BFS distance vector.
pub const UNREACHABLE: u32 = u32::MAX;

/// Exact hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<u32>, GraphError> {
    g.check_vertex(source)?;
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Dense all-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        u32::from(self.data[u * self.n + v])
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u16] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    /// Sum of distances from `u` to every vertex.
    pub fn total_distance(&self, u: usize) -> u64 {
        self.row(u).iter().map(|&d| u64::from(d)).sum()
    }
}

/// BFS from every vertex. Rejects disconnected graphs.
pub fn all_pairs(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    g.ensure_connected()?;
    let n = g.n();
    let mut data = vec![0u16; n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(s, row)| {
        let mut queue = VecDeque::with_capacity(n);
        let mut seen = vec![false; n];
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    });
    Ok(DistanceMatrix { n, data })
}

/// `I(u, v)`: every vertex on some shortest `(u, v)`-path.
pub fn interval(d: &DistanceMatrix, u: usize, v: usize) -> VertexSet {
    let (ru, rv) = (d.row(u), d.row(v));
    let duv = ru[v];
    VertexSet::from_sorted((0..d.n()).filter(|&w| ru[w] + rv[w] == duv).collect())
}

/// Members of `candidates` on a shortest `(u, v)`-path, ascending.
pub fn interval_within(d: &DistanceMatrix, u: usize, v: usize, candidates: &[usize]) -> Vec<usize> {
    let (ru, rv) = (d.row(u), d.row(v));
    let duv = ru[v];
    let mut out: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&w| ru[w] + rv[w] == duv)
        .collect();
    out.sort_unstable();
    out
}

/// All vertices of `target` nearest to `x` (ties kept).
pub fn metric_projection(
    d: &DistanceMatrix,
    x: usize,
    target: &[usize],
) -> Result<VertexSet, GraphError> {
    let row = d.row(x);
    let best = target
        .iter()
        .map(|&a| row[a])
        .min()
        .ok_or(GraphError::EmptyTarget)?;
    Ok(target.iter().copied().filter(|&a| row[a] == best).collect())
}

/// A vertex of `I(a, b) ∩ I(a, c)` furthest from `a`, minimum id on ties.
fn furthest_common(d: &DistanceMatrix, a: usize, b: usize, c: usize) -> usize {
    let (ra, rb, rc) = (d.row(a), d.row(b), d.row(c));
    let (dab, dac) = (ra[b], ra[c]);
    let mut best = a;
    for w in 0..d.n() {
        if ra[w] + rb[w] == dab && ra[w] + rc[w] == dac && ra[w] > ra[best] {
            best = w;
        }
    }
    best
}

/// A quasi-median `(u1', u2', u3')` of the triple, built greedily: `u1'` is a
/// furthest vertex from `u1` in `I(u1,u2) ∩ I(u1,u3)`, then `u2'` from
/// `I(u2,u1') ∩ I(u2,u3)`, then `u3'` from `I(u3,u1') ∩ I(u3,u2')`.
pub fn quasi_median(d: &DistanceMatrix, u1: usize, u2: usize, u3: usize) -> (usize, usize, usize) {
    let a = furthest_common(d, u1, u2, u3);
    let b = furthest_common(d, u2, a, u3);
    let c = furthest_common(d, u3, a, b);
    (a, b, c)
}

/// True iff `I(u, v) ⊆ set` for all `u, v` in `set`.
///
/// Equivalently, for every `u` in `set`, each member's neighbors one step
/// closer to `u` are members: walking back from `v` toward `u` along such
/// edges covers `I(u, v)`.
pub fn is_convex(g: &Graph, d: &DistanceMatrix, set: &VertexSet) -> bool {
    let mut inside = vec![false; d.n()];
    for v in set.iter() {
        inside[v] = true;
    }
    set.as_slice().par_iter().all(|&u| {
        let row = d.row(u);
        set.iter().all(|w| {
            g.neighbors(w)
                .iter()
                .all(|&x| row[x] + 1 != row[w] || inside[x])
        })
    })
}

/// `B_k(v)`: vertices within distance `k` of `v`.
pub fn ball(d: &DistanceMatrix, v: usize, k: u32) -> VertexSet {
    VertexSet::from_sorted((0..d.n()).filter(|&w| d.get(v, w) <= k).collect())
}

/// Distances inside the subgraph induced by `set` agree with `d` (isometry).
/// Returns a violating pair otherwise.
pub fn isometry_violation(g: &Graph, d: &DistanceMatrix, set: &[usize]) -> Option<(usize, usize)> {
    let sub = g.induced(set);
    (0..set.len()).into_par_iter().find_map_any(|i| {
        let local = bfs_distances(&sub, i).expect("valid vertex");
        (0..set.len())
            .find(|&j| local[j] != d.get(set[i], set[j]))
            .map(|j| (set[i], set[j]))
    })
}
