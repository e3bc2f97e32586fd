//! Biconnected components (blocks) and articulation vertices.

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Vertices of the block, ascending.
    pub vertices: Vec<usize>,
    /// The block contains a triangle.
    pub nontrivial: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Articulation vertices, ascending.
    pub articulation: Vec<usize>,
}

/// Standard block decomposition (Hopcroft–Tarjan with an edge stack).
/// Isolated vertices form single-vertex blocks.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_art = vec![false; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            found.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        if u != root {
                            is_art[u] = true;
                        }
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        found.push(verts);
                    }
                }
            }
        }
        if root_children > 1 {
            is_art[root] = true;
        }
    }

    let blocks = found
        .into_iter()
        .map(|vertices| {
            let nontrivial = has_triangle(g, &vertices);
            Block {
                vertices,
                nontrivial,
            }
        })
        .collect();
    BlockDecomposition {
        blocks,
        articulation: (0..n).filter(|&v| is_art[v]).collect(),
    }
}

fn has_triangle(g: &Graph, sorted: &[usize]) -> bool {
    if sorted.len() < 3 {
        return false;
    }
    let inside = |v: usize| sorted.binary_search(&v).is_ok();
    sorted.iter().any(|&a| {
        g.neighbors(a)
            .iter()
            .filter(|&&b| b > a && inside(b))
            .any(|&b| {
                g.common_neighbors(a, b)
                    .into_iter()
                    .any(|c| c > b && inside(c))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    #[test]
    fn path_blocks_are_edges() {
        let bd = blocks(&path_graph(5));
        assert_eq!(bd.blocks.len(), 4);
        assert!(bd
            .blocks
            .iter()
            .all(|b| b.vertices.len() == 2 && !b.nontrivial));
        assert_eq!(bd.articulation, vec![1, 2, 3]);
    }

    #[test]
    fn triangle_is_one_block() {
        let bd = blocks(&complete_graph(3));
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.blocks[0].nontrivial);
        assert!(bd.articulation.is_empty());
    }

    #[test]
    fn bowtie_has_cut_vertex() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let bd = blocks(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.articulation, vec![2]);
    }

    #[test]
    fn single_vertex() {
        let bd = blocks(&Graph::singleton());
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.articulation.is_empty());
    }
}
