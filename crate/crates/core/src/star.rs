//! Median vertex, the star `St(m)`, star labels and the fiber partition.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::StructureError;
use crate::graph::Graph;
use crate::metric::DistanceMatrix;

/// A vertex minimizing the sum of distances to all vertices, minimum id on ties.
pub fn median_vertex(d: &DistanceMatrix) -> usize {
    (0..d.n())
        .min_by_key(|&v| (d.total_distance(v), v))
        .expect("distance matrix of a non-empty graph")
}

/// A vertex at distance 2 from the center with exactly two common neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Apex {
    pub vertex: usize,
    /// The two neighbors of the center adjacent to `vertex`, ascending.
    pub pair: (usize, usize),
}

/// `St(m)`: the closed neighborhood of `m` plus its apexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// Neighbors of the center, ascending.
    pub neighbors: Vec<usize>,
    /// Apexes, ascending by vertex.
    pub apexes: Vec<Apex>,
}

impl Star {
    /// All star vertices: the center, then neighbors, then apexes.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(1 + self.neighbors.len() + self.apexes.len());
        out.push(self.center);
        out.extend(&self.neighbors);
        out.extend(self.apexes.iter().map(|a| a.vertex));
        out
    }

    pub fn len(&self) -> usize {
        1 + self.neighbors.len() + self.apexes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Builds the star of `m`. Several apexes may share a neighbor pair; they
/// then share a star label too.
pub fn build_star(g: &Graph, d: &DistanceMatrix, m: usize) -> Result<Star, StructureError> {
    let neighbors = g.neighbors(m).to_vec();
    let row = d.row(m);
    let mut apexes = Vec::new();
    for (x, &dx) in row.iter().enumerate() {
        if dx != 2 {
            continue;
        }
        let common = g.common_neighbors(x, m);
        if common.len() != 2 || !g.has_edge(common[0], common[1]) {
            continue;
        }
        let pair = (common[0], common[1]);
        apexes.push(Apex { vertex: x, pair });
    }
    Ok(Star {
        center: m,
        neighbors,
        apexes,
    })
}

/// Position of a vertex inside a star: `∅` for the center, `{i}` for the
/// `i`-th neighbor (1-based, ascending ids), `{i, j}` (`i < j`) for an apex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum StarLabel {
    Empty,
    Single(u32),
    Pair(u32, u32),
}

impl StarLabel {
    pub fn pair(a: u32, b: u32) -> Self {
        StarLabel::Pair(a.min(b), a.max(b))
    }

    pub fn elements(&self) -> Vec<u32> {
        match *self {
            StarLabel::Empty => vec![],
            StarLabel::Single(a) => vec![a],
            StarLabel::Pair(a, b) => vec![a, b],
        }
    }

    /// Strict inclusion of label sets.
    pub fn is_strict_subset(&self, other: &StarLabel) -> bool {
        let (mine, theirs) = (self.elements(), other.elements());
        mine.len() < theirs.len() && mine.iter().all(|e| theirs.contains(e))
    }
}

/// Labels of the star vertices, in the order of [`Star::vertices`].
pub fn star_labels(star: &Star) -> Vec<(usize, StarLabel)> {
    let rank: HashMap<usize, u32> = star
        .neighbors
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32 + 1))
        .collect();
    let mut out = Vec::with_capacity(star.len());
    out.push((star.center, StarLabel::Empty));
    out.extend(
        star.neighbors
            .iter()
            .map(|&v| (v, StarLabel::Single(rank[&v]))),
    );
    out.extend(
        star.apexes
            .iter()
            .map(|a| (a.vertex, StarLabel::pair(rank[&a.pair.0], rank[&a.pair.1]))),
    );
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Center,
    Panel,
    Cone,
}

/// Assignment of every vertex to a fiber `F(x)` of a star vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberPartition {
    /// Star vertices in [`Star::vertices`] order; fiber `i` is rooted at `roots[i]`.
    pub roots: Vec<usize>,
    pub roles: Vec<Role>,
    pub labels: Vec<StarLabel>,
    /// Members of each fiber, ascending.
    pub members: Vec<Vec<usize>>,
    /// Fiber index of every vertex.
    pub fiber_of: Vec<usize>,
}

impl FiberPartition {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn fiber_index(&self, root: usize) -> Option<usize> {
        self.roots.iter().position(|&r| r == root)
    }

    /// For a cone fiber, the fiber indices of its two panels: the panel with
    /// the smaller star label first.
    pub fn cone_panels(&self, star: &Star, cone: usize) -> Option<(usize, usize)> {
        if self.roles[cone] != Role::Cone {
            return None;
        }
        let apex = &star.apexes[cone - 1 - star.neighbors.len()];
        let a = self.fiber_index(apex.pair.0)?;
        let b = self.fiber_index(apex.pair.1)?;
        // Neighbors are ranked in ascending id order, so the smaller id has the smaller label.
        Some((a, b))
    }
}

/// Partitions the vertices by their metric projection on `N[m]`.
pub fn fiber_partition(
    g: &Graph,
    d: &DistanceMatrix,
    star: &Star,
) -> Result<FiberPartition, StructureError> {
    let m = star.center;
    let labels = star_labels(star);
    let roots: Vec<usize> = labels.iter().map(|&(v, _)| v).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &r) in roots.iter().enumerate() {
        index[r] = i;
    }
    let roles: Vec<Role> = labels
        .iter()
        .map(|(_, l)| match l {
            StarLabel::Empty => Role::Center,
            StarLabel::Single(_) => Role::Panel,
            StarLabel::Pair(..) => Role::Cone,
        })
        .collect();
    let mut apex_of: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for a in &star.apexes {
        apex_of.entry(a.pair).or_default().push(a.vertex);
    }

    let mut fiber_of = vec![usize::MAX; g.n()];
    let mut members = vec![Vec::new(); roots.len()];
    fiber_of[m] = 0;
    for u in (0..g.n()).filter(|&u| u != m) {
        let row = d.row(u);
        let best = star
            .neighbors
            .iter()
            .map(|&v| row[v])
            .min()
            .expect("m has a neighbor");
        let proj: Vec<usize> = star
            .neighbors
            .iter()
            .copied()
            .filter(|&v| row[v] == best)
            .collect();
        let root = match proj.as_slice() {
            [x] => *x,
            [v, w] => {
                let pair = (*v, *w);
                let closer: Vec<usize> = apex_of
                    .get(&pair)
                    .into_iter()
                    .flatten()
                    .copied()
                    .filter(|&y| row[y] + 1 == best)
                    .collect();
                match closer.as_slice() {
                    [y] => *y,
                    [] => return Err(StructureError::MissingApex { vertex: u, pair }),
                    [first, second, ..] => {
                        return Err(StructureError::AmbiguousApex {
                            vertex: u,
                            first: *first,
                            second: *second,
                        })
                    }
                }
            }
            _ => {
                return Err(StructureError::ProjectionSize {
                    center: m,
                    vertex: u,
                    projection: proj,
                })
            }
        };
        fiber_of[u] = index[root];
    }
    for (u, &f) in fiber_of.iter().enumerate() {
        members[f].push(u);
    }
    Ok(FiberPartition {
        roots,
        roles,
        labels: labels.into_iter().map(|(_, l)| l).collect(),
        members,
        fiber_of,
    })
}

/// Sentinel for star vertices disconnected in `St(m) \ {m}`.
pub const FAR: u32 = u32::MAX;

/// Hop distances between star vertices inside the subgraph induced by
/// `St(m) \ {m}`, indexed like [`Star::vertices`]. Entries involving the
/// center are [`FAR`] except on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarMetric {
    size: usize,
    data: Vec<u32>,
}

impl StarMetric {
    pub fn new(g: &Graph, star: &Star) -> Self {
        let verts = star.vertices();
        let size = verts.len();
        let sub = g.induced(&verts[1..]);
        let mut data = vec![FAR; size * size];
        data[0] = 0;
        for s in 0..sub.n() {
            let row = &mut data[(s + 1) * size..(s + 2) * size];
            row[s + 1] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = row[u + 1];
                for &w in sub.neighbors(u) {
                    if row[w + 1] == FAR {
                        row[w + 1] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        StarMetric { size, data }
    }

    /// `k` such that fibers `a` and `b` are `k`-neighboring; [`FAR`] for infinity.
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.data[a * self.size + b]
    }
}

/// `k` for the star vertices `x` and `y` (ids in `g`), or [`FAR`].
pub fn fiber_neighboring_k(g: &Graph, star: &Star, x: usize, y: usize) -> u32 {
    let verts = star.vertices();
    let pos = |v: usize| verts.iter().position(|&w| w == v).expect("star vertex");
    StarMetric::new(g, star).get(pos(x), pos(y))
}
