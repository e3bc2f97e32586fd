//! Membership tests for the class of K4-free bridged graphs.
//!
//! Bridgedness is decided through the weakly modular characterization: the
//! triangle and quadrangle conditions hold and there is no induced 4- or
//! 5-cycle. Every negative answer comes with a witness.

use std::fmt;

use serde::Serialize;

use crate::graph::Graph;
use crate::metric::{all_pairs, DistanceMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    /// Four pairwise adjacent vertices.
    K4 {
        vertices: [usize; 4],
    },
    /// An induced cycle, listed in cyclic order.
    InducedC4 {
        cycle: [usize; 4],
    },
    InducedC5 {
        cycle: [usize; 5],
    },
    /// `v ~ w` at equal distance `k >= 1` from `base` with no common
    /// neighbor at distance `k - 1`.
    TriangleCondition {
        base: usize,
        edge: (usize, usize),
    },
    /// `v, w` at distance `k` from `base`, both adjacent to `apex` at
    /// distance `k + 1`, with no common neighbor at distance `k - 1`.
    QuadrangleCondition {
        base: usize,
        pair: (usize, usize),
        apex: usize,
    },
    /// A triangle inside the sphere `S_radius(center)`.
    TriangleInSphere {
        center: usize,
        radius: u32,
        triangle: [usize; 3],
    },
    Disconnected {
        unreached: usize,
    },
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassWitness::K4 { vertices } => write!(f, "4-clique {vertices:?}"),
            ClassWitness::InducedC4 { cycle } => write!(f, "induced 4-cycle {cycle:?}"),
            ClassWitness::InducedC5 { cycle } => write!(f, "induced 5-cycle {cycle:?}"),
            ClassWitness::TriangleCondition { base, edge } => {
                write!(
                    f,
                    "triangle condition fails for base {base} and edge {edge:?}"
                )
            }
            ClassWitness::QuadrangleCondition { base, pair, apex } => write!(
                f,
                "quadrangle condition fails for base {base}, pair {pair:?}, apex {apex}"
            ),
            ClassWitness::TriangleInSphere {
                center,
                radius,
                triangle,
            } => write!(f, "triangle {triangle:?} in sphere S_{radius}({center})"),
            ClassWitness::Disconnected { unreached } => {
                write!(f, "disconnected (vertex {unreached} unreachable from 0)")
            }
        }
    }
}

/// Outcome of a class test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<ClassWitness>,
}

impl Verdict {
    fn from_witness(witness: Option<ClassWitness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// True iff `g` has no 4-clique.
pub fn is_k4_free(g: &Graph) -> Verdict {
    Verdict::from_witness(find_k4(g).map(|vertices| ClassWitness::K4 { vertices }))
}

fn find_k4(g: &Graph) -> Option<[usize; 4]> {
    for (a, b) in g.edges() {
        let common: Vec<usize> = g
            .common_neighbors(a, b)
            .into_iter()
            .filter(|&c| c > b)
            .collect();
        for (i, &c) in common.iter().enumerate() {
            if let Some(&e) = common[i + 1..].iter().find(|&&e| g.has_edge(c, e)) {
                return Some([a, b, c, e]);
            }
        }
    }
    None
}

/// True iff `g` is bridged (weakly modular without induced C4 and C5).
/// `d` must be the distance matrix of `g`.
pub fn is_bridged(g: &Graph, d: &DistanceMatrix) -> Verdict {
    let witness = find_induced_c4(g)
        .map(|cycle| ClassWitness::InducedC4 { cycle })
        .or_else(|| find_induced_c5(g).map(|cycle| ClassWitness::InducedC5 { cycle }))
        .or_else(|| triangle_condition_violation(g, d))
        .or_else(|| quadrangle_condition_violation(g, d));
    Verdict::from_witness(witness)
}

fn find_induced_c4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    // For each a, collect the common neighbors with every c > a not adjacent to a.
    let mut commons: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut touched = Vec::new();
    for a in 0..n {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c > a && !g.has_edge(a, c) {
                    if commons[c].is_empty() {
                        touched.push(c);
                    }
                    commons[c].push(b);
                }
            }
        }
        let mut hit = None;
        for &c in &touched {
            let list = &commons[c];
            'pairs: for (i, &b) in list.iter().enumerate() {
                for &e in &list[i + 1..] {
                    if !g.has_edge(b, e) {
                        hit = Some([a, b, c, e]);
                        break 'pairs;
                    }
                }
            }
            if hit.is_some() {
                break;
            }
        }
        for &c in &touched {
            commons[c].clear();
        }
        touched.clear();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn find_induced_c5(g: &Graph) -> Option<[usize; 5]> {
    for a in 0..g.n() {
        let na = g.neighbors(a);
        for (i, &b) in na.iter().enumerate() {
            for &e in &na[i + 1..] {
                if g.has_edge(b, e) {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c == a || g.has_edge(a, c) || g.has_edge(c, e) {
                        continue;
                    }
                    for dd in g.common_neighbors(c, e) {
                        if dd != a && !g.has_edge(a, dd) && !g.has_edge(b, dd) {
                            return Some([a, b, c, dd, e]);
                        }
                    }
                }
            }
        }
    }
    None
}

fn has_common_below(g: &Graph, row: &[u16], v: usize, w: usize, level: u16) -> bool {
    g.common_neighbors(v, w)
        .into_iter()
        .any(|x| row[x] + 1 == level)
}

fn triangle_condition_violation(g: &Graph, d: &DistanceMatrix) -> Option<ClassWitness> {
    for base in 0..g.n() {
        let row = d.row(base);
        for (v, w) in g.edges() {
            let k = row[v];
            if k >= 1 && row[w] == k && !has_common_below(g, row, v, w, k) {
                return Some(ClassWitness::TriangleCondition { base, edge: (v, w) });
            }
        }
    }
    None
}

fn quadrangle_condition_violation(g: &Graph, d: &DistanceMatrix) -> Option<ClassWitness> {
    let mut lower = Vec::new();
    for base in 0..g.n() {
        let row = d.row(base);
        for z in 0..g.n() {
            let level = row[z];
            if level < 2 {
                continue;
            }
            lower.clear();
            lower.extend(
                g.neighbors(z)
                    .iter()
                    .copied()
                    .filter(|&v| row[v] + 1 == level),
            );
            for (i, &v) in lower.iter().enumerate() {
                for &w in &lower[i + 1..] {
                    if !has_common_below(g, row, v, w, level - 1) {
                        return Some(ClassWitness::QuadrangleCondition {
                            base,
                            pair: (v, w),
                            apex: z,
                        });
                    }
                }
            }
        }
    }
    None
}

/// True iff no sphere around `u` contains a triangle.
pub fn spheres_triangle_free(g: &Graph, d: &DistanceMatrix, u: usize) -> Verdict {
    let row = d.row(u);
    for (a, b) in g.edges() {
        if row[a] != row[b] {
            continue;
        }
        if let Some(c) = g
            .common_neighbors(a, b)
            .into_iter()
            .find(|&c| c > b && row[c] == row[a])
        {
            return Verdict::from_witness(Some(ClassWitness::TriangleInSphere {
                center: u,
                radius: u32::from(row[a]),
                triangle: [a, b, c],
            }));
        }
    }
    Verdict::from_witness(None)
}

/// Combined verdict for the CLI and generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub k4_free: bool,
    pub bridged: bool,
    pub witnesses: Vec<ClassWitness>,
}

impl ClassReport {
    pub fn accepted(&self) -> bool {
        self.connected && self.k4_free && self.bridged
    }

    pub fn first_witness(&self) -> Option<&ClassWitness> {
        self.witnesses.first()
    }
}

/// Runs every class test. A disconnected graph is reported as not bridged.
pub fn check_class(g: &Graph) -> ClassReport {
    let k4 = is_k4_free(g);
    let mut witnesses: Vec<ClassWitness> = k4.witness.clone().into_iter().collect();
    let (connected, bridged) = match all_pairs(g) {
        Ok(d) => {
            let b = is_bridged(g, &d);
            witnesses.extend(b.witness);
            (true, b.holds)
        }
        Err(_) => {
            let unreached = g.unreachable_vertex().unwrap_or(0);
            witnesses.push(ClassWitness::Disconnected { unreached });
            (false, false)
        }
    };
    ClassReport {
        n: g.n(),
        m: g.m(),
        connected,
        k4_free: k4.holds,
        bridged,
        witnesses,
    }
}
