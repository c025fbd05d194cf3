//! Shortest-path tree and the interdigitating dual spanning tree.
//!
//! In a triangulated embedding, the dual edges whose primal edges avoid the
//! shortest-path tree form a spanning tree of the dual graph; the two trees
//! partition the edge set.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::planar::embedding::{dart, PlanarEmbedding};

/// Shortest-path tree with deterministic parent choice (lowest parent vertex,
/// then lowest edge id, on exact distance ties).
#[derive(Clone, Debug)]
pub struct SpTree {
    pub root: usize,
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
    pub parent_edge: Vec<Option<usize>>,
}

impl SpTree {
    /// Vertices on the tree path root -> v, root first.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        self.parent_edge.iter().flatten().copied().collect()
    }
}

#[derive(Copy, Clone, PartialEq)]
struct Item {
    dist: f64,
    vertex: usize,
}

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn sp_tree(emb: &PlanarEmbedding, root: usize) -> SpTree {
    let n = emb.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[root] = 0.0;
    heap.push(Item {
        dist: 0.0,
        vertex: root,
    });
    while let Some(Item { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &e in &emb.rotations()[u] {
            let edge = &emb.edges()[e];
            let v = edge.other(u);
            let nd = d + edge.weight;
            let better = nd < dist[v]
                || (nd == dist[v]
                    && match (parent[v], parent_edge[v]) {
                        (Some(pu), Some(pe)) => (u, e) < (pu, pe),
                        _ => false,
                    });
            if better {
                dist[v] = nd;
                parent[v] = Some(u);
                parent_edge[v] = Some(e);
                heap.push(Item { dist: nd, vertex: v });
            }
        }
    }
    SpTree {
        root,
        dist,
        parent,
        parent_edge,
    }
}

/// Dual spanning tree: one node per face, one edge per primal non-tree edge.
#[derive(Clone, Debug)]
pub struct DualTree {
    pub face_count: usize,
    /// (face a, face b, primal edge id)
    pub edges: Vec<(usize, usize, usize)>,
}

/// Builds both interdigitating trees of a triangulated embedding.
pub fn interdigitating_trees(
    emb: &PlanarEmbedding,
    root: usize,
) -> Result<(SpTree, DualTree, Vec<Vec<usize>>)> {
    let tree = sp_tree(emb, root);
    let faces = emb.faces();
    let face_of = emb.face_of_darts(&faces);
    let in_tree: std::collections::HashSet<usize> = tree.tree_edges().into_iter().collect();
    let mut dual_edges = Vec::new();
    for e in 0..emb.edges().len() {
        if in_tree.contains(&e) {
            continue;
        }
        let f1 = face_of[dart(e, 0)];
        let f2 = face_of[dart(e, 1)];
        if f1 == f2 {
            return Err(Error::InvalidEmbedding(format!(
                "non-tree edge {e} borders one face; embedding is not triangulated"
            )));
        }
        dual_edges.push((f1, f2, e));
    }
    let dual = DualTree {
        face_count: faces.len(),
        edges: dual_edges,
    };
    if dual.edges.len() + 1 != dual.face_count {
        return Err(Error::InvalidEmbedding(format!(
            "dual has {} edges for {} faces; not a spanning tree",
            dual.edges.len(),
            dual.face_count
        )));
    }
    Ok((tree, dual, faces))
}
