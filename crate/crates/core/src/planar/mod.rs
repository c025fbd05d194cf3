//! Planar structural machinery: triangulation, interdigitating trees, the
//! degree-3 tree partition, shortest-path separator covers, and the portal
//! distance approximators built on them.

pub mod embedding;
pub mod generators;
pub mod partition;
pub mod portals;
pub mod separator;
pub mod trees;
pub mod triangulate;

#[cfg(test)]
pub(crate) use generators as tests_support;

use crate::error::{Error, Result};
use crate::metric::{CenterSet, MetricHandle, PointId};
use embedding::{PlanarEdge, PlanarEmbedding};
use partition::tree_partition;
use portals::SeparatorPath;
use trees::interdigitating_trees;

/// An edge-weighted planar graph with a validated rotation system.
#[derive(Clone, Debug)]
pub struct PlanarInstance {
    emb: PlanarEmbedding,
    triangulated: bool,
}

impl PlanarInstance {
    pub fn new(
        n: usize,
        edges: &[(usize, usize, f64)],
        rotations: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let planar_edges: Vec<PlanarEdge> = edges
            .iter()
            .map(|&(u, v, w)| PlanarEdge {
                u,
                v,
                weight: w,
                original: true,
            })
            .collect();
        let emb = PlanarEmbedding::new(n, planar_edges, rotations)?;
        Ok(Self::with_embedding(emb))
    }

    /// Rotation system inferred from a straight-line drawing.
    pub fn from_straight_line(coords: &[(f64, f64)], edges: &[(usize, usize, f64)]) -> Result<Self> {
        let planar_edges: Vec<PlanarEdge> = edges
            .iter()
            .map(|&(u, v, w)| PlanarEdge {
                u,
                v,
                weight: w,
                original: true,
            })
            .collect();
        let emb = PlanarEmbedding::from_straight_line(coords, planar_edges)?;
        Ok(Self::with_embedding(emb))
    }

    fn with_embedding(emb: PlanarEmbedding) -> Self {
        let triangulated = emb.faces().iter().all(|f| f.len() == 3);
        PlanarInstance { emb, triangulated }
    }

    pub(crate) fn from_embedding(emb: PlanarEmbedding, triangulated: bool) -> Result<Self> {
        debug_assert_eq!(triangulated, emb.faces().iter().all(|f| f.len() == 3));
        Ok(PlanarInstance { emb, triangulated })
    }

    pub fn embedding(&self) -> &PlanarEmbedding {
        &self.emb
    }

    pub fn is_triangulated(&self) -> bool {
        self.triangulated
    }

    /// Shortest-path metric over the original edges.
    pub fn metric_handle(&self) -> Result<MetricHandle> {
        let edges: Vec<(usize, usize, f64)> = self
            .emb
            .edges()
            .iter()
            .filter(|e| e.original)
            .map(|e| (e.u, e.v, e.weight))
            .collect();
        MetricHandle::graph(self.emb.vertex_count(), &edges)
    }

    /// Metric including triangulation chords (sentinel weights); used by the
    /// distance-preservation oracle.
    pub fn metric_handle_with_chords(&self) -> Result<MetricHandle> {
        let edges: Vec<(usize, usize, f64)> = self
            .emb
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.weight))
            .collect();
        MetricHandle::graph(self.emb.vertex_count(), &edges)
    }
}

/// One part of the separator cover.
#[derive(Clone, Debug)]
pub struct DecompositionPart {
    /// Sorted vertices of the part (union of its faces' corners).
    pub vertices: Vec<usize>,
    /// Indices into [`PlanarDecomposition::paths`].
    pub path_ids: Vec<usize>,
    /// Dual-tree nodes (faces) making up the part.
    pub faces: Vec<usize>,
    /// Marked faces (incident to S) inside the part.
    pub r_face_count: usize,
    /// Dual boundary edges of the part.
    pub boundary_edge_count: usize,
}

impl DecompositionPart {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Cover of the vertex set by parts, each separated from the rest by at most
/// eight shortest paths.
#[derive(Clone, Debug)]
pub struct PlanarDecomposition {
    pub parts: Vec<DecompositionPart>,
    /// Deduplicated separator paths (root paths of the shortest-path tree).
    pub paths: Vec<SeparatorPath>,
    /// The marked vertex set the cover was built for.
    pub s: Vec<usize>,
    pub root: usize,
}

/// Builds the separator cover for marked vertices `s`:
/// triangulate, interdigitating trees, partition the dual tree around the
/// faces incident to `s`, then cut each part's boundary cycles into root
/// paths of the shortest-path tree.
pub fn decompose(instance: &PlanarInstance, s: &[PointId]) -> Result<PlanarDecomposition> {
    let tri = triangulate::triangulate(instance)?;
    let emb = tri.embedding();
    let n = emb.vertex_count();
    for &v in s {
        if v >= n {
            return Err(Error::InvalidPointId { id: v, ambient: n });
        }
    }
    let root = 0usize;
    let (tree, dual, faces) = interdigitating_trees(emb, root)?;

    let mut s_mask = vec![false; n];
    for &v in s {
        s_mask[v] = true;
    }
    let marked_faces: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.iter().any(|&d| s_mask[emb.tail(d)]))
        .map(|(i, _)| i)
        .collect();

    let dual_edge_pairs: Vec<(usize, usize)> =
        dual.edges.iter().map(|&(a, b, _)| (a, b)).collect();
    let tp = tree_partition(dual.face_count, &dual_edge_pairs, &marked_faces)?;
    tp.verify(dual.face_count)?;

    let mut paths: Vec<SeparatorPath> = Vec::new();
    let mut parts = Vec::new();
    for part in &tp.parts {
        let mut vertices: Vec<usize> = part
            .nodes
            .iter()
            .flat_map(|&f| faces[f].iter().map(|&d| emb.tail(d)))
            .collect();
        vertices.sort_unstable();
        vertices.dedup();

        let mut path_ids = Vec::new();
        for &be in &part.boundary_edges {
            let primal = dual.edges[be].2;
            let edge = &emb.edges()[primal];
            for endpoint in [edge.u, edge.v] {
                let verts = tree.root_path(endpoint);
                let prefix: Vec<f64> = verts.iter().map(|&v| tree.dist[v]).collect();
                let path = SeparatorPath::new(verts, prefix)?;
                let id = match paths.iter().position(|p| *p == path) {
                    Some(i) => i,
                    None => {
                        paths.push(path);
                        paths.len() - 1
                    }
                };
                if !path_ids.contains(&id) {
                    path_ids.push(id);
                }
            }
        }
        path_ids.sort_unstable();
        parts.push(DecompositionPart {
            vertices,
            path_ids,
            faces: part.nodes.clone(),
            r_face_count: part.r_count,
            boundary_edge_count: part.boundary_edges.len(),
        });
    }

    Ok(PlanarDecomposition {
        parts,
        paths,
        s: {
            let mut ss = s.to_vec();
            ss.sort_unstable();
            ss.dedup();
            ss
        },
        root,
    })
}

/// Full invariant suite: cover, path count, verified-shortest paths, BFS
/// disconnection, |S ∩ V_i| <= 9, and the tree-partition bounds.
pub fn verify_decomposition(
    instance: &PlanarInstance,
    decomp: &PlanarDecomposition,
) -> Result<()> {
    let metric = instance.metric_handle()?;
    let n = instance.embedding().vertex_count();

    // cover
    let mut covered = vec![false; n];
    for part in &decomp.parts {
        for &v in &part.vertices {
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Error::InvalidParameter(format!("vertex {v} uncovered")));
    }

    // every path is a shortest path (every prefix distance matches Dijkstra)
    for path in &decomp.paths {
        let start = path.vertices[0];
        let single = CenterSet::new(vec![start], 1)?;
        let table = crate::metric::distances_to_set(&metric, &single)?;
        for (i, &v) in path.vertices.iter().enumerate() {
            let want = path.prefix[i] - path.prefix[0];
            let got = table[v].0;
            if (want - got).abs() > 1e-9 * got.max(1.0) {
                return Err(Error::InvalidParameter(format!(
                    "path prefix at {v}: {want} but true distance {got}"
                )));
            }
        }
    }

    let adjacency = metric.adjacency().expect("planar metric is a graph");
    for (pi, part) in decomp.parts.iter().enumerate() {
        if part.path_ids.len() > 8 {
            return Err(Error::InvalidParameter(format!(
                "part {pi} has {} separator paths",
                part.path_ids.len()
            )));
        }
        if part.boundary_edge_count > 4 {
            return Err(Error::InvalidParameter(format!(
                "part {pi} has {} boundary edges",
                part.boundary_edge_count
            )));
        }
        if part.r_face_count > 3 {
            return Err(Error::InvalidParameter(format!(
                "part {pi} has {} marked faces",
                part.r_face_count
            )));
        }
        let s_in_part = decomp.s.iter().filter(|&&v| part.contains(v)).count();
        if s_in_part > 9 {
            return Err(Error::InvalidParameter(format!(
                "part {pi} contains {s_in_part} marked vertices"
            )));
        }

        // removing the separator vertices must disconnect the part interior
        let mut removed = vec![false; n];
        for &pid in &part.path_ids {
            for &v in &decomp.paths[pid].vertices {
                removed[v] = true;
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut next_comp = 0;
        for start in 0..n {
            if removed[start] || comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next_comp;
            while let Some(u) = stack.pop() {
                for &(v, _) in &adjacency[u] {
                    if removed[v] || comp[v] != usize::MAX {
                        continue;
                    }
                    comp[v] = next_comp;
                    stack.push(v);
                }
            }
            next_comp += 1;
        }
        for &u in &part.vertices {
            if removed[u] {
                continue;
            }
            for v in 0..n {
                if removed[v] || part.contains(v) {
                    continue;
                }
                if comp[u] == comp[v] {
                    return Err(Error::InvalidParameter(format!(
                        "part {pi}: interior vertex {u} still connected to outside vertex {v}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The decomposition wired into distance queries; see [`separator`].
pub use separator::SeparatorMetric;
