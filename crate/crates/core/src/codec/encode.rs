use rayon::prelude::*;
use serde::Serialize;

use super::{LevelRecord, SidePart, VertexLabel};
use crate::boundary::{entrance, exits, total_boundary, TotalBoundaryTree};
use crate::class_check::check_class;
use crate::error::{EncodeError, StructureError};
use crate::graph::Graph;
use crate::metric::all_pairs;
use crate::star::{
    build_star, fiber_partition, median_vertex, FiberPartition, Role, Star, StarLabel, StarMetric,
};
use crate::tree_labels::{tree_encode, TreeLabel};

/// Encoder-side record of one recursion node, kept for ground-truth pair
/// classification and inspection.
#[derive(Clone, Debug)]
pub struct TraceNode {
    /// Input-graph id of the median.
    pub median: usize,
    /// Input-graph ids of the star vertices; fiber `i` is rooted at `roots[i]`.
    pub roots: Vec<usize>,
    pub roles: Vec<Role>,
    pub labels: Vec<StarLabel>,
    pub star_metric: StarMetric,
    pub size: usize,
}

#[derive(Clone, Debug, Default)]
pub struct EncodeTrace {
    pub nodes: Vec<TraceNode>,
    /// For every vertex, `(node, fiber index)` per level, top level first.
    pub paths: Vec<Vec<(usize, usize)>>,
}

/// Ground-truth relation of a pair at the level where it is split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Identical,
    Separated,
    AlmostSeparated,
    OnePc,
    TwoCc,
}

impl EncodeTrace {
    /// Index of the deepest level shared by `u` and `v`.
    pub fn split_level(&self, u: usize, v: usize) -> Option<usize> {
        let (pu, pv) = (&self.paths[u], &self.paths[v]);
        pu.iter()
            .zip(pv)
            .take_while(|(a, b)| a.0 == b.0)
            .count()
            .checked_sub(1)
    }

    /// Classifies `(u, v)` by the fibers holding them at the split level.
    pub fn classify(&self, u: usize, v: usize) -> PairClass {
        if u == v {
            return PairClass::Identical;
        }
        let level = self
            .split_level(u, v)
            .expect("both vertices share the top level");
        let (node, fu) = self.paths[u][level];
        let fv = self.paths[v][level].1;
        let node = &self.nodes[node];
        let (ru, rv) = (node.roles[fu], node.roles[fv]);
        if ru == Role::Center || rv == Role::Center {
            return PairClass::Separated;
        }
        // Cones over the same two panels carry equal labels.
        if node.labels[fu] == node.labels[fv] {
            return PairClass::AlmostSeparated;
        }
        let k = node.star_metric.get(fu, fv);
        match (ru, rv) {
            (Role::Panel, Role::Panel) if k >= 2 => PairClass::Separated,
            (Role::Panel, Role::Cone) | (Role::Cone, Role::Panel) if k >= 3 => PairClass::Separated,
            (Role::Cone, Role::Cone) if k >= 4 => PairClass::Separated,
            (Role::Panel, Role::Cone) | (Role::Cone, Role::Panel) if k == 1 => PairClass::OnePc,
            (Role::Cone, Role::Cone) if k == 2 => PairClass::TwoCc,
            _ => PairClass::AlmostSeparated,
        }
    }
}

/// Encodes a graph after checking that it is K4-free bridged.
pub fn encode_graph(g: &Graph) -> Result<Vec<VertexLabel>, EncodeError> {
    let report = check_class(g);
    if let Some(w) = report.first_witness() {
        return Err(EncodeError::Class(w.clone()));
    }
    encode_unchecked(g)
}

/// Encodes without the class check; structural violations met during the
/// recursion are still reported.
pub fn encode_unchecked(g: &Graph) -> Result<Vec<VertexLabel>, EncodeError> {
    run(g, None)
}

/// Like [`encode_graph`], also returning the recursion trace.
pub fn encode_graph_traced(g: &Graph) -> Result<(Vec<VertexLabel>, EncodeTrace), EncodeError> {
    let report = check_class(g);
    if let Some(w) = report.first_witness() {
        return Err(EncodeError::Class(w.clone()));
    }
    let mut trace = EncodeTrace {
        nodes: Vec::new(),
        paths: vec![Vec::new(); g.n()],
    };
    let labels = run(g, Some(&mut trace))?;
    Ok((labels, trace))
}

fn run(g: &Graph, mut trace: Option<&mut EncodeTrace>) -> Result<Vec<VertexLabel>, EncodeError> {
    g.ensure_connected()?;
    let mut labels: Vec<VertexLabel> = (0..g.n())
        .map(|v| VertexLabel {
            id: v as u32,
            levels: Vec::new(),
        })
        .collect();
    let mut pending: Vec<Vec<usize>> = vec![(0..g.n()).collect()];
    while let Some(verts) = pending.pop() {
        if verts.len() < 2 {
            continue;
        }
        let sub = g.induced(&verts);
        let node = encode_node(&sub).map_err(|e| e.map_vertices(|v| verts[v]))?;
        let node_index = trace.as_ref().map_or(0, |t| t.nodes.len());
        for (local, record) in node.records.into_iter().enumerate() {
            labels[verts[local]].levels.push(record.globalize(&verts));
        }
        if let Some(t) = trace.as_deref_mut() {
            for (local, &f) in node.partition.fiber_of.iter().enumerate() {
                t.paths[verts[local]].push((node_index, f));
            }
            t.nodes.push(TraceNode {
                median: verts[node.star.center],
                roots: node.partition.roots.iter().map(|&r| verts[r]).collect(),
                roles: node.partition.roles.clone(),
                labels: node.partition.labels.clone(),
                star_metric: StarMetric::new(&sub, &node.star),
                size: verts.len(),
            });
        }
        for members in node.partition.members.iter().rev() {
            if members.len() >= 2 {
                pending.push(members.iter().map(|&v| verts[v]).collect());
            }
        }
    }
    Ok(labels)
}

struct Node {
    star: Star,
    partition: FiberPartition,
    records: Vec<LocalRecord>,
}

/// A level record with the median still in local ids.
struct LocalRecord(LevelRecord);

impl LocalRecord {
    fn globalize(self, verts: &[usize]) -> LevelRecord {
        let mut r = self.0;
        r.median = verts[r.median as usize] as u32;
        r
    }
}

/// One step of the recursion on a connected graph with at least two vertices.
fn encode_node(g: &Graph) -> Result<Node, StructureError> {
    let d = all_pairs(g).expect("fibers of a connected graph are connected");
    let m = median_vertex(&d);
    let star = build_star(g, &d, m)?;
    let partition = fiber_partition(g, &d, &star)?;

    let mut trees: Vec<Option<(TotalBoundaryTree, Vec<TreeLabel>)>> = vec![None; partition.len()];
    for f in (0..partition.len()).filter(|&f| partition.roles[f] == Role::Panel) {
        let tree = total_boundary(g, &d, &partition, f)?;
        let tl = tree_encode(&tree.parent);
        trees[f] = Some((tree, tl));
    }
    let side = |panel: usize, u: usize, target: usize| {
        let (tree, tl) = trees[panel].as_ref().expect("panel tree built");
        SidePart {
            tree: tl[tree.position(target).expect("target is a tree member")].clone(),
            dist: d.get(u, target),
        }
    };

    let records: Vec<Result<LocalRecord, StructureError>> = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let f = partition.fiber_of[u];
            let (left, right) = match partition.roles[f] {
                Role::Center => (None, None),
                Role::Panel => {
                    let (tree, _) = trees[f].as_ref().expect("panel tree built");
                    let (a, b) = exits(g, &d, tree, u)?;
                    (Some(side(f, u, a)), Some(side(f, u, b)))
                }
                Role::Cone => {
                    let (pa, pb) =
                        partition
                            .cone_panels(&star, f)
                            .ok_or(StructureError::ConePanels {
                                cone: partition.roots[f],
                                panels: 0,
                            })?;
                    let ea = entrance(
                        &d,
                        &partition,
                        &trees[pa].as_ref().expect("panel tree").0,
                        u,
                        pa,
                    )?;
                    let eb = entrance(
                        &d,
                        &partition,
                        &trees[pb].as_ref().expect("panel tree").0,
                        u,
                        pb,
                    )?;
                    (Some(side(pa, u, ea)), Some(side(pb, u, eb)))
                }
            };
            Ok(LocalRecord(LevelRecord {
                median: m as u32,
                dist: d.get(u, m),
                star: partition.labels[f],
                left,
                right,
            }))
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Node {
        star,
        partition,
        records,
    })
}
