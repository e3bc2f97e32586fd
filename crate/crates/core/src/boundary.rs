//! Total boundaries of fibers as starshaped trees, entrances of cone vertices
//! on panel boundaries, and exits of panel vertices.

use serde::Serialize;

use crate::blocks::blocks;
use crate::error::StructureError;
use crate::graph::Graph;
use crate::metric::{interval, DistanceMatrix};
use crate::star::FiberPartition;

/// `∂*F(x)`: the vertices of `F(x)` with a neighbor in another fiber, plus
/// `x`, as a tree of parent pointers toward `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotalBoundaryTree {
    pub root: usize,
    /// Members, ascending.
    pub members: Vec<usize>,
    /// Parent of each member as an index into `members`; `None` for the root.
    pub parent: Vec<Option<usize>>,
    /// `d(member, root)`.
    pub depth: Vec<u32>,
}

impl TotalBoundaryTree {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }

    /// Distance in the tree between members at indices `a` and `b`.
    pub fn tree_distance(&self, mut a: usize, mut b: usize) -> u32 {
        let mut steps = 0;
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a].expect("non-root has a parent");
            } else {
                b = self.parent[b].expect("non-root has a parent");
            }
            steps += 1;
        }
        steps
    }
}

/// Builds `∂*F(x)` for the fiber with index `fiber`.
pub fn total_boundary(
    g: &Graph,
    d: &DistanceMatrix,
    p: &FiberPartition,
    fiber: usize,
) -> Result<TotalBoundaryTree, StructureError> {
    let root = p.roots[fiber];
    let members: Vec<usize> = p.members[fiber]
        .iter()
        .copied()
        .filter(|&v| v == root || g.neighbors(v).iter().any(|&w| p.fiber_of[w] != fiber))
        .collect();
    let row = d.row(root);
    let mut parent = Vec::with_capacity(members.len());
    for &v in &members {
        if v == root {
            parent.push(None);
            continue;
        }
        let candidates: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| row[w] + 1 == row[v] && members.binary_search(&w).is_ok())
            .collect();
        match candidates.as_slice() {
            [w] => parent.push(Some(members.binary_search(w).expect("member"))),
            _ => {
                return Err(StructureError::BoundaryParent {
                    root,
                    vertex: v,
                    candidates,
                })
            }
        }
    }
    let depth = members.iter().map(|&v| u32::from(row[v])).collect();
    Ok(TotalBoundaryTree {
        root,
        members,
        parent,
        depth,
    })
}

/// Entrance of `v` on the panel `F(w)` (fiber index `panel`): the vertex of
/// the metric projection of `v` on `F(w)` closest to `w`.
pub fn entrance(
    d: &DistanceMatrix,
    p: &FiberPartition,
    tree: &TotalBoundaryTree,
    v: usize,
    panel: usize,
) -> Result<usize, StructureError> {
    let w = p.roots[panel];
    let row = d.row(v);
    let fiber = &p.members[panel];
    let best = fiber
        .iter()
        .map(|&a| row[a])
        .min()
        .expect("fibers are non-empty");
    let proj: Vec<usize> = fiber.iter().copied().filter(|&a| row[a] == best).collect();
    if let Some(&outside) = proj.iter().find(|&&a| !tree.contains(a)) {
        return Err(StructureError::ProjectionOffBoundary {
            vertex: v,
            panel: w,
            outside,
        });
    }
    let root_row = d.row(w);
    let closest = proj
        .iter()
        .map(|&a| root_row[a])
        .min()
        .expect("projection is non-empty");
    let candidates: Vec<usize> = proj
        .into_iter()
        .filter(|&a| root_row[a] == closest)
        .collect();
    match candidates.as_slice() {
        [e] => Ok(*e),
        _ => Err(StructureError::EntranceNotUnique {
            vertex: v,
            panel: w,
            candidates,
        }),
    }
}

/// The two exits of `u` on the tree: the deepest vertices of the one or two
/// increasing paths forming `I(u, x) ∩ T`, ascending by id. A single path
/// yields its deepest vertex twice.
pub fn exits(
    g: &Graph,
    d: &DistanceMatrix,
    tree: &TotalBoundaryTree,
    u: usize,
) -> Result<(usize, usize), StructureError> {
    if tree.contains(u) {
        return Ok((u, u));
    }
    let x = tree.root;
    let (ru, rx) = (d.row(u), d.row(x));
    let dux = ru[x];
    let inside: Vec<bool> = tree.members.iter().map(|&t| ru[t] + rx[t] == dux).collect();
    let mut has_child = vec![false; tree.len()];
    for (i, p) in tree.parent.iter().enumerate() {
        if let (true, Some(p)) = (inside[i], *p) {
            has_child[p] = true;
        }
    }
    let leaves: Vec<usize> = (0..tree.len())
        .filter(|&i| inside[i] && !has_child[i])
        .map(|i| tree.members[i])
        .collect();
    let shape_error = |detail: String| StructureError::ExitShape {
        vertex: u,
        root: x,
        detail,
    };
    let trimmed: Vec<usize> = (0..tree.len())
        .filter(|&i| inside[i])
        .map(|i| tree.members[i])
        .collect();
    match leaves.as_slice() {
        [a] => {
            check_tripod(g, d, u, x, &trimmed).map_err(shape_error)?;
            Ok((*a, *a))
        }
        [a, b] => {
            check_tripod(g, d, u, x, &trimmed).map_err(shape_error)?;
            Ok((*a, *b))
        }
        _ => Err(shape_error(format!("I(u, x) ∩ T has leaves {leaves:?}"))),
    }
}

/// Checks that `trimmed = I(u, x) ∩ T` lies in the tripod `P0 ∪ P1 ∪ P2`
/// read off the non-trivial block of `I(u, x)` closest to `x`.
fn check_tripod(
    g: &Graph,
    d: &DistanceMatrix,
    u: usize,
    x: usize,
    trimmed: &[usize],
) -> Result<(), String> {
    let span = interval(d, u, x).into_vec();
    let h = g.induced(&span);
    let decomposition = blocks(&h);
    let rx = d.row(x);
    let level = |local: usize| rx[span[local]];
    let Some(block) = decomposition
        .blocks
        .iter()
        .filter(|b| b.nontrivial)
        .min_by_key(|b| b.vertices.iter().map(|&v| level(v)).min())
    else {
        // `I(u, x)` is a single path; the trimmed tree lies on it.
        return Ok(());
    };
    let low = block
        .vertices
        .iter()
        .map(|&v| level(v))
        .min()
        .expect("non-empty block");
    let high = block
        .vertices
        .iter()
        .map(|&v| level(v))
        .max()
        .expect("non-empty block");
    let z0: Vec<usize> = block
        .vertices
        .iter()
        .copied()
        .filter(|&v| level(v) == low)
        .collect();
    let [z0] = z0.as_slice() else {
        return Err(format!("block has several vertices closest to x: {z0:?}"));
    };

    // Order each level of the block as a path, oriented consistently.
    let mut levels: Vec<Vec<usize>> = vec![vec![*z0]];
    for k in low + 1..=high {
        let set: Vec<usize> = block
            .vertices
            .iter()
            .copied()
            .filter(|&v| level(v) == k)
            .collect();
        let mut path = order_as_path(&h, &set)
            .ok_or_else(|| format!("level {k} of the block is not a path"))?;
        let prev = levels.last().expect("levels start with z0");
        let span_of = |v: usize| {
            let idx: Vec<usize> = (0..prev.len())
                .filter(|&i| h.has_edge(v, prev[i]))
                .collect();
            (idx.first().copied(), idx.last().copied())
        };
        if path.len() > 1 && span_of(path[0]) > span_of(*path.last().expect("non-empty")) {
            path.reverse();
        }
        levels.push(path);
    }
    let q1: Vec<usize> = levels.iter().map(|l| l[0]).collect();
    let q2: Vec<usize> = levels
        .iter()
        .map(|l| *l.last().expect("non-empty level"))
        .collect();
    for q in [&q1, &q2] {
        if q.windows(2).any(|w| !h.has_edge(w[0], w[1])) {
            return Err("block border is not a path".into());
        }
    }
    let articulation = &decomposition.articulation;
    let convex = |v: usize| {
        if articulation.binary_search(&v).is_ok() {
            return false;
        }
        let nb = h.neighbors(v);
        let triangles = nb
            .iter()
            .enumerate()
            .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| h.has_edge(a, b)).count())
            .sum::<usize>();
        triangles == 2
    };
    let corner = |q: &[usize]| {
        q.iter()
            .copied()
            .find(|&v| convex(v))
            .unwrap_or(*q.last().expect("non-empty"))
    };
    let (z0, v1, v2) = (span[*z0], span[corner(&q1)], span[corner(&q2)]);
    let on = |a: usize, b: usize, w: usize| d.get(a, w) + d.get(w, b) == d.get(a, b);
    match trimmed
        .iter()
        .find(|&&t| !(on(x, z0, t) || on(z0, v1, t) || on(z0, v2, t)))
    {
        None => Ok(()),
        Some(t) => Err(format!(
            "vertex {t} of I(u, x) ∩ T is outside the tripod at z0 = {z0}, v1 = {v1}, v2 = {v2}"
        )),
    }
}

/// Orders `set` along the path it induces in `h`, or `None` if it does not
/// induce a path.
fn order_as_path(h: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    let inside = |v: usize| set.binary_search(&v).is_ok();
    let degree = |v: usize| h.neighbors(v).iter().filter(|&&w| inside(w)).count();
    if set.len() == 1 {
        return Some(set.to_vec());
    }
    let start = set.iter().copied().find(|&v| degree(v) == 1)?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = h.neighbors(cur).iter().find(|&&w| inside(w) && w != prev) {
        if path.len() == set.len() || path.contains(&next) {
            return None;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    if path.len() == set.len() && set.iter().all(|&v| degree(v) <= 2) {
        Some(path)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::flat_triangle;
    use crate::graph::path_graph;
    use crate::metric::all_pairs;
    use crate::star::{build_star, fiber_partition, median_vertex, Role};

    #[test]
    fn singleton_fiber_tree() {
        let g = path_graph(3);
        let d = all_pairs(&g).unwrap();
        let star = build_star(&g, &d, 1).unwrap();
        let p = fiber_partition(&g, &d, &star).unwrap();
        let t = total_boundary(&g, &d, &p, 1).unwrap();
        assert_eq!(t.members, vec![0]);
        assert_eq!(t.parent, vec![None]);
    }

    #[test]
    fn tree_panel_boundary_is_root() {
        let g = path_graph(7);
        let d = all_pairs(&g).unwrap();
        let star = build_star(&g, &d, 3).unwrap();
        let p = fiber_partition(&g, &d, &star).unwrap();
        for f in 1..p.len() {
            let t = total_boundary(&g, &d, &p, f).unwrap();
            assert_eq!(t.members, vec![p.roots[f]]);
            // Every panel vertex exits through the root.
            for &u in &p.members[f] {
                let r = p.roots[f];
                assert_eq!(exits(&g, &d, &t, u).unwrap(), (r, r));
            }
        }
    }

    #[test]
    fn flat_triangle_structures() {
        let g = flat_triangle(6);
        let d = all_pairs(&g).unwrap();
        let star = build_star(&g, &d, median_vertex(&d)).unwrap();
        let p = fiber_partition(&g, &d, &star).unwrap();
        let trees: Vec<_> = (0..p.len())
            .map(|f| total_boundary(&g, &d, &p, f).unwrap())
            .collect();
        for c in (0..p.len()).filter(|&i| p.roles[i] == Role::Cone) {
            let (a, b) = p.cone_panels(&star, c).unwrap();
            for &v in &p.members[c] {
                for panel in [a, b] {
                    let e = entrance(&d, &p, &trees[panel], v, panel).unwrap();
                    assert_eq!(p.fiber_of[e], panel);
                }
            }
        }
        for f in (0..p.len()).filter(|&i| p.roles[i] == Role::Panel) {
            for &u in &p.members[f] {
                let (a, b) = exits(&g, &d, &trees[f], u).unwrap();
                assert!(a <= b);
                assert!(trees[f].contains(a) && trees[f].contains(b));
            }
        }
    }

    #[test]
    fn path_ordering() {
        let g = path_graph(5);
        assert_eq!(order_as_path(&g, &[1, 2, 3]), Some(vec![1, 2, 3]));
        assert_eq!(order_as_path(&g, &[1, 3]), None);
    }
}
