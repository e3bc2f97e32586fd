//! Exact distance labels for trees by recursive centroid decomposition.
//!
//! A label lists `(separator, distance)` pairs from the top level down. Two
//! vertices share separators on a common prefix, and the deepest shared
//! separator lies on the path between them, so the minimum of the summed
//! distances over the prefix is the tree distance.

use std::collections::VecDeque;

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct TreeLabel {
    /// `(separator, distance to separator)`, top level first. Separators are
    /// tree-local vertex indices.
    pub entries: Vec<(u32, u32)>,
}

/// Labels every vertex of the tree given by `parents` (`None` marks the root).
pub fn tree_encode(parents: &[Option<usize>]) -> Vec<TreeLabel> {
    let t = parents.len();
    let mut adj = vec![Vec::new(); t];
    for (v, p) in parents.iter().enumerate() {
        if let Some(p) = *p {
            adj[v].push(p);
            adj[p].push(v);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    encode_adjacency(&adj)
}

/// Same as [`tree_encode`] for a forest given by sorted adjacency lists.
pub fn encode_adjacency(adj: &[Vec<usize>]) -> Vec<TreeLabel> {
    let t = adj.len();
    let mut labels = vec![TreeLabel::default(); t];
    let mut removed = vec![false; t];
    let mut size = vec![0usize; t];
    let mut parent = vec![usize::MAX; t];
    let mut dist = vec![0u32; t];
    let mut pending = Vec::new();

    for root in 0..t {
        if !labels[root].entries.is_empty() {
            continue;
        }
        pending.push(root);
        while let Some(start) = pending.pop() {
            // Collect the component of `start` in BFS order.
            let mut order = vec![start];
            parent[start] = usize::MAX;
            let mut i = 0;
            while i < order.len() {
                let u = order[i];
                i += 1;
                for &w in &adj[u] {
                    if !removed[w] && w != parent[u] {
                        parent[w] = u;
                        order.push(w);
                    }
                }
            }
            for &u in order.iter().rev() {
                size[u] = 1 + adj[u]
                    .iter()
                    .filter(|&&w| !removed[w] && parent[w] == u && w != parent[u])
                    .map(|&w| size[w])
                    .sum::<usize>();
            }
            let total = order.len();
            let centroid = order
                .iter()
                .copied()
                .filter(|&u| {
                    let above = total - size[u];
                    let below = adj[u]
                        .iter()
                        .filter(|&&w| !removed[w] && w != parent[u])
                        .map(|&w| size[w])
                        .max()
                        .unwrap_or(0);
                    above.max(below) <= total / 2
                })
                .min()
                .expect("every tree has a centroid");

            let mut queue = VecDeque::from([centroid]);
            dist[centroid] = 0;
            parent[centroid] = usize::MAX;
            while let Some(u) = queue.pop_front() {
                labels[u].entries.push((centroid as u32, dist[u]));
                for &w in &adj[u] {
                    if !removed[w] && w != parent[u] {
                        parent[w] = u;
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            removed[centroid] = true;
            for &w in adj[centroid].iter().rev() {
                if !removed[w] {
                    pending.push(w);
                }
            }
        }
    }
    labels
}

/// Exact tree distance from two labels of the same [`tree_encode`] call.
pub fn tree_decode(a: &TreeLabel, b: &TreeLabel) -> u32 {
    a.entries
        .iter()
        .zip(&b.entries)
        .take_while(|(x, y)| x.0 == y.0)
        .map(|(x, y)| x.1 + y.1)
        .min()
        .unwrap_or(u32::MAX)
}
