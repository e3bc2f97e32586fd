//! Undirected simple graphs over dense vertex ids and the edge-list text format.
//!
//! The text format is a header line `n m` followed by `m` lines `u v`, one per
//! undirected edge, with 0-indexed whitespace-separated ids. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::GraphError;

/// Largest vertex count supported; distances are stored as `u16`.
pub const MAX_VERTICES: usize = u16::MAX as usize - 1;

/// An undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// The graph with a single vertex and no edges.
    pub fn singleton() -> Self {
        Graph {
            adj: vec![Vec::new()],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Vertices adjacent to both `u` and `v`, ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Returns the first vertex not reachable from vertex 0, if any.
    pub fn unreachable_vertex(&self) -> Option<usize> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn is_connected(&self) -> bool {
        self.unreachable_vertex().is_none()
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        match self.unreachable_vertex() {
            None => Ok(()),
            Some(unreached) => Err(GraphError::Disconnected { unreached }),
        }
    }

    /// Subgraph induced by `vertices`; local id `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_count = 0;
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                list.sort_unstable();
                edge_count += list.len();
                list
            })
            .collect();
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    /// Parses the edge-list text format.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, body) in lines {
            if edges.len() == m {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(line, body)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Serializes to the edge-list text format, edges sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.m());
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], GraphError> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| GraphError::Parse {
            line,
            msg: format!("invalid integer `{tok}`"),
        })
    };
    let pair = [next("first field")?, next("second field")?];
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line,
            msg: "trailing fields".into(),
        });
    }
    Ok(pair)
}

/// A set of vertex ids kept sorted, so iteration is in ascending-id order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Wraps an already sorted, duplicate-free list.
    pub(crate) fn from_sorted(list: Vec<usize>) -> Self {
        debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
        VertexSet(list)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid clique")
}

/// Wheel: hub 0 joined to a cycle `1..=rim`.
pub fn wheel_graph(rim: usize) -> Graph {
    let spokes = (1..=rim).map(|i| (0, i));
    let cycle = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
    Graph::from_edges(rim + 1, spokes.chain(cycle)).expect("valid wheel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = Graph::parse("4 3\n0 1\n1 2\n# comment\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Graph::parse("2 1\n0 0\n"),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::parse("3 2\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::parse("2 1\n0 2\n"),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Graph::parse("3 2\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse("2 1\n0 x\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(Graph::parse(""), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse("0 0\n"), Err(GraphError::Empty)));
    }

    #[test]
    fn connectivity() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.unreachable_vertex(), Some(2));
        assert!(path_graph(5).is_connected());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = cycle_graph(5);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2) && !h.has_edge(0, 2));
    }

    #[test]
    fn vertex_set_is_sorted_and_deduped() {
        let s: VertexSet = [5, 1, 3, 1].into_iter().collect();
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
    }
}
