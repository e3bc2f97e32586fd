//! Seeded generators of K4-free bridged graphs built from patches of the
//! triangular grid.
//!
//! Grid points are axial coordinates `(i, j)`; the neighbors of a point are
//! offsets `(±1, 0)`, `(0, ±1)` and `±(1, -1)`. Randomness comes from
//! `ChaCha8Rng::seed_from_u64(seed)`, which is portable across platforms, so a
//! `(parameters, seed)` pair always yields the same edge list.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::class_check::{check_class, ClassWitness};
use crate::graph::Graph;

/// Rejection-sampling attempts before a generator gives up.
pub const MAX_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no K4-free bridged sample after {attempts} attempts; last witness: {witness}")]
    Exhausted {
        attempts: usize,
        witness: ClassWitness,
    },
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A grid patch with its straight boundary sides (vertex lists, in order).
#[derive(Clone, Debug)]
struct Patch {
    n: usize,
    edges: Vec<(usize, usize)>,
    sides: Vec<Vec<usize>>,
}

fn grid_edges(points: &[(i64, i64)]) -> Vec<(usize, usize)> {
    let index: HashMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut edges = Vec::new();
    for (k, &(i, j)) in points.iter().enumerate() {
        for (di, dj) in [(1, 0), (0, 1), (1, -1)] {
            if let Some(&l) = index.get(&(i + di, j + dj)) {
                edges.push((k.min(l), k.max(l)));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn triangle_patch(k: usize) -> Patch {
    let k = k as i64;
    let points: Vec<(i64, i64)> = (0..=k)
        .flat_map(|j| (0..=k - j).map(move |i| (i, j)))
        .collect();
    let id = |i: i64, j: i64| {
        points
            .iter()
            .position(|&p| p == (i, j))
            .expect("grid point")
    };
    let sides = vec![
        (0..=k).map(|i| id(i, 0)).collect(),
        (0..=k).map(|j| id(0, j)).collect(),
        (0..=k).map(|j| id(k - j, j)).collect(),
    ];
    Patch {
        n: points.len(),
        edges: grid_edges(&points),
        sides,
    }
}

fn lozenge_points(a: usize, b: usize) -> Vec<(i64, i64)> {
    let (a, b) = (a as i64, b as i64);
    (0..=b).flat_map(|j| (0..=a).map(move |i| (i, j))).collect()
}

fn lozenge_patch(a: usize, b: usize) -> Patch {
    let points = lozenge_points(a, b);
    let id = |i: usize, j: usize| j * (a + 1) + i;
    let sides = vec![
        (0..=a).map(|i| id(i, 0)).collect(),
        (0..=a).map(|i| id(i, b)).collect(),
        (0..=b).map(|j| id(0, j)).collect(),
        (0..=b).map(|j| id(a, j)).collect(),
    ];
    Patch {
        n: points.len(),
        edges: grid_edges(&points),
        sides,
    }
}

fn patch_graph(p: &Patch) -> Graph {
    Graph::from_edges(p.n, p.edges.iter().copied()).expect("grid patches are simple")
}

/// The flat triangle of side `k`: `(k+1)(k+2)/2` vertices and `3k(k+1)/2`
/// edges. Its corners are vertices `0`, `k` and `n - 1`.
pub fn flat_triangle(k: usize) -> Graph {
    patch_graph(&triangle_patch(k))
}

/// The grid parallelogram with sides `a` and `b`. Its corners `0` and
/// `n - 1` are at distance `a + b` and their interval is the whole graph.
pub fn lozenge(a: usize, b: usize) -> Result<Graph, GenError> {
    if a == 0 || b == 0 {
        return Err(GenError::InvalidParameter(
            "lozenge sides must be >= 1".into(),
        ));
    }
    Ok(patch_graph(&lozenge_patch(a, b)))
}

/// `lozenge(a, b)` with up to `budget` degree-3 vertices removed one at a
/// time in seeded random order. A vertex is removable when its three
/// neighbors induce a path and, after removal, the corners `0` and `n - 1`
/// are still at distance `a + b` with every vertex on a shortest path between
/// them. Corner ids are preserved; other ids are compacted in order.
pub fn burned_lozenge(a: usize, b: usize, seed: u64, budget: usize) -> Result<Graph, GenError> {
    let base = lozenge(a, b)?;
    let mut rng = seeded_rng(seed);
    let n = base.n();
    let (start, end) = (0, n - 1);
    let target = (a + b) as u32;
    let mut alive = vec![true; n];
    let mut removed = 0;
    while removed < budget {
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && v != start && v != end && removable_shape(&base, &alive, v))
            .collect();
        candidates.shuffle(&mut rng);
        let mut progressed = false;
        for v in candidates {
            alive[v] = false;
            if interval_spans(&base, &alive, start, end, target) {
                progressed = true;
                removed += 1;
                break;
            }
            alive[v] = true;
        }
        if !progressed {
            break;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let g = base.induced(&kept);
    let report = check_class(&g);
    match report.first_witness() {
        None => Ok(g),
        Some(w) => Err(GenError::Exhausted {
            attempts: 1,
            witness: w.clone(),
        }),
    }
}

fn removable_shape(g: &Graph, alive: &[bool], v: usize) -> bool {
    let nb: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| alive[w])
        .collect();
    if nb.len() != 3 {
        return false;
    }
    let links = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(i, j)| g.has_edge(nb[i], nb[j]))
        .count();
    links == 2
}

fn masked_bfs(g: &Graph, alive: &[bool], s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if alive[w] && dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn interval_spans(g: &Graph, alive: &[bool], s: usize, t: usize, target: u32) -> bool {
    let ds = masked_bfs(g, alive, s);
    if ds[t] != target {
        return false;
    }
    let dt = masked_bfs(g, alive, t);
    (0..g.n())
        .all(|w| !alive[w] || (ds[w] != u32::MAX && dt[w] != u32::MAX && ds[w] + dt[w] == target))
}

/// Accumulates patches glued along vertices or straight side segments.
struct Builder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    sides: Vec<(Vec<usize>, bool)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            edges: BTreeSet::new(),
            sides: Vec::new(),
        }
    }

    /// Adds `patch`, identifying `glue[(local, existing)]`; returns the id map.
    /// Sides listed in `skip_sides` are not recorded.
    fn add(&mut self, patch: &Patch, glue: &[(usize, usize)], skip_sides: &[usize]) -> Vec<usize> {
        let mut map = vec![usize::MAX; patch.n];
        for &(local, existing) in glue {
            map[local] = existing;
        }
        for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = self.n;
            self.n += 1;
        }
        for &(u, v) in &patch.edges {
            let (a, b) = (map[u], map[v]);
            self.edges.insert((a.min(b), a.max(b)));
        }
        for (i, side) in patch.sides.iter().enumerate() {
            if !skip_sides.contains(&i) {
                self.sides
                    .push((side.iter().map(|&v| map[v]).collect(), false));
            }
        }
        map
    }

    fn attach_tree(&mut self, size: usize, at: usize, rng: &mut ChaCha8Rng) {
        let first = self.n;
        self.n += size;
        self.edges.insert((at, first));
        for k in 1..size {
            let parent = first + rng.gen_range(0..k);
            self.edges.insert((parent, first + k));
        }
    }

    fn graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("builder keeps edges simple")
    }
}

fn accept_or_retry(g: Graph, last: &mut Option<ClassWitness>) -> Option<Graph> {
    let report = check_class(&g);
    match report.first_witness() {
        None => Some(g),
        Some(w) => {
            *last = Some(w.clone());
            None
        }
    }
}

/// `count` copies of `flat_triangle(side)`; every copy after the first is
/// glued along one of its full sides to a random side of an earlier copy,
/// with random orientation. Samples failing the class check are redrawn.
pub fn glued_triangles(side: usize, count: usize, seed: u64) -> Result<Graph, GenError> {
    if side < 2 || count < 1 {
        return Err(GenError::InvalidParameter(
            "glued triangles need side >= 2 and count >= 1".into(),
        ));
    }
    let mut rng = seeded_rng(seed);
    let patch = triangle_patch(side);
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let mut b = Builder::new();
        b.add(&patch, &[], &[]);
        for _ in 1..count {
            let target = b.sides[rng.gen_range(0..b.sides.len())].0.clone();
            let reversed = rng.gen_bool(0.5);
            let glue: Vec<(usize, usize)> = patch.sides[0]
                .iter()
                .enumerate()
                .map(|(i, &local)| {
                    let t = if reversed {
                        target[side - i]
                    } else {
                        target[i]
                    };
                    (local, t)
                })
                .collect();
            b.add(&patch, &glue, &[0]);
        }
        if let Some(g) = accept_or_retry(b.graph(), &mut last) {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted {
        attempts: MAX_ATTEMPTS,
        witness: last.expect("at least one failed attempt"),
    })
}

/// A uniformly random labelled tree on `n` vertices (Prüfer decoding).
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("tree needs n >= 1".into()));
    }
    if n <= 2 {
        return Ok(Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("tiny tree"));
    }
    let mut rng = seeded_rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = *leaves.iter().next().expect("a leaf exists");
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Ok(Graph::from_edges(n, edges).expect("Prüfer trees are simple"))
}

enum Piece {
    Triangle(usize),
    Lozenge(usize, usize),
}

impl Piece {
    fn patch(&self) -> Patch {
        match *self {
            Piece::Triangle(k) => triangle_patch(k),
            Piece::Lozenge(a, b) => lozenge_patch(a, b),
        }
    }
}

/// A K4-free bridged graph on exactly `n_target` vertices, composed from flat
/// triangles, lozenges, burned lozenges and small trees. Grid patches are
/// glued along straight segments of unused sides or at single vertices;
/// burned lozenges and trees attach at single vertices. The result is
/// checked and redrawn on failure.
pub fn random_instance(n_target: usize, seed: u64) -> Result<Graph, GenError> {
    if n_target == 0 {
        return Err(GenError::InvalidParameter("n_target must be >= 1".into()));
    }
    if n_target == 1 {
        return Ok(Graph::singleton());
    }
    let mut rng = seeded_rng(seed);
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let g = compose(n_target, &mut rng);
        if let Some(g) = accept_or_retry(g, &mut last) {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted {
        attempts: MAX_ATTEMPTS,
        witness: last.expect("at least one failed attempt"),
    })
}

fn compose(n_target: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut b = Builder::new();
    // Seed patch.
    let first = pick_piece(n_target, rng);
    match first {
        Some(piece) => {
            b.add(&piece.patch(), &[], &[]);
        }
        None => {
            b.n = 1;
            b.attach_tree(n_target - 1, 0, rng);
        }
    }
    while b.n < n_target {
        let remaining = n_target - b.n;
        let roll: f64 = rng.gen();
        if roll < 0.55 {
            if glue_along_side(&mut b, remaining, rng) {
                continue;
            }
        } else if roll < 0.65 {
            if let Some(piece) = pick_piece(remaining + 1, rng) {
                let patch = piece.patch();
                let local = rng.gen_range(0..patch.n);
                let at = rng.gen_range(0..b.n);
                b.add(&patch, &[(local, at)], &[]);
                continue;
            }
        } else if roll < 0.8 {
            let (a, c) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
            if (a + 1) * (c + 1) <= remaining + 1 {
                let budget = rng.gen_range(0..=a * c);
                let burned =
                    burned_lozenge(a, c, rng.gen(), budget).expect("burned lozenges stay in class");
                let patch = Patch {
                    n: burned.n(),
                    edges: burned.edges().collect(),
                    sides: Vec::new(),
                };
                let local = rng.gen_range(0..patch.n);
                let at = rng.gen_range(0..b.n);
                b.add(&patch, &[(local, at)], &[]);
                continue;
            }
        }
        let size = rng.gen_range(1..=8).min(remaining);
        let at = rng.gen_range(0..b.n);
        b.attach_tree(size, at, rng);
    }
    b.graph()
}

/// A triangle or lozenge with at most `limit` vertices, if one fits.
fn pick_piece(limit: usize, rng: &mut ChaCha8Rng) -> Option<Piece> {
    for _ in 0..8 {
        let piece = if rng.gen_bool(0.6) {
            Piece::Triangle(rng.gen_range(1..=7))
        } else {
            Piece::Lozenge(rng.gen_range(1..=6), rng.gen_range(1..=6))
        };
        let n = match piece {
            Piece::Triangle(k) => (k + 1) * (k + 2) / 2,
            Piece::Lozenge(a, c) => (a + 1) * (c + 1),
        };
        if n <= limit {
            return Some(piece);
        }
    }
    None
}

/// Glues a fresh patch along a straight segment of an unused side.
fn glue_along_side(b: &mut Builder, remaining: usize, rng: &mut ChaCha8Rng) -> bool {
    let open: Vec<usize> = (0..b.sides.len()).filter(|&i| !b.sides[i].1).collect();
    if open.is_empty() {
        return false;
    }
    let si = open[rng.gen_range(0..open.len())];
    let Some(piece) = pick_piece(remaining + 2, rng) else {
        return false;
    };
    let patch = piece.patch();
    let pi = rng.gen_range(0..patch.sides.len());
    let (target, own) = (&b.sides[si].0, &patch.sides[pi]);
    let len = (target.len() - 1).min(own.len() - 1);
    if patch.n - (len + 1) > remaining {
        return false;
    }
    let t_off = rng.gen_range(0..=target.len() - 1 - len);
    let o_off = rng.gen_range(0..=own.len() - 1 - len);
    let reversed = rng.gen_bool(0.5);
    let glue: Vec<(usize, usize)> = (0..=len)
        .map(|i| {
            let t = if reversed {
                target[t_off + len - i]
            } else {
                target[t_off + i]
            };
            (own[o_off + i], t)
        })
        .collect();
    b.sides[si].1 = true;
    b.add(&patch, &glue, &[pi]);
    true
}
