//! Weighted point sets, ambient metric spaces, and the clustering cost.
//!
//! A [`MetricHandle`] is a uniform distance oracle over an ambient space of
//! `|V|` points addressed by index. Three backends are supported: Euclidean
//! coordinates, connected graphs with positive edge weights (shortest-path
//! metric), and explicit symmetric matrices. The graph backend answers
//! set-distance queries with a single multi-source Dijkstra sweep seeded from
//! a virtual source attached to every center with weight zero.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Index of a point in the ambient space.
pub type PointId = usize;

/// Data set `X`: distinct ambient points with strictly positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPointSet {
    points: Vec<PointId>,
    weights: Vec<f64>,
}

impl WeightedPointSet {
    pub fn new(points: Vec<PointId>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if points.len() != weights.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "weights must be strictly positive and finite, got {w}"
            )));
        }
        let mut seen = points.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidParameter(
                "point identifiers must be distinct".into(),
            ));
        }
        Ok(WeightedPointSet { points, weights })
    }

    /// Unit-weight set over the given points.
    pub fn unit(points: Vec<PointId>) -> Result<Self> {
        let weights = vec![1.0; points.len()];
        WeightedPointSet::new(points, weights)
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointId, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn weight_of(&self, id: PointId) -> Option<f64> {
        self.points
            .iter()
            .position(|&p| p == id)
            .map(|i| self.weights[i])
    }

    /// Number of distinct points.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Total weight.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Candidate center set `C` with its declared size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSet {
    centers: Vec<PointId>,
    k_bound: usize,
}

impl CenterSet {
    /// Builds a center set; `k_bound` is the declared cap (`alpha * k` for
    /// bicriteria solutions). Centers are stored sorted and deduplicated.
    pub fn new(mut centers: Vec<PointId>, k_bound: usize) -> Result<Self> {
        centers.sort_unstable();
        centers.dedup();
        if centers.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        if centers.len() > k_bound {
            return Err(Error::InvalidParameter(format!(
                "{} centers exceed declared bound {k_bound}",
                centers.len()
            )));
        }
        Ok(CenterSet { centers, k_bound })
    }

    pub fn centers(&self) -> &[PointId] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn k_bound(&self) -> usize {
        self.k_bound
    }
}

/// Problem parameters for (k,z)-clustering.
#[derive(Clone, Copy, Debug)]
pub struct ClusteringParams {
    pub k: usize,
    pub z: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl ClusteringParams {
    pub fn new(k: usize, z: f64, epsilon: f64, delta: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if !(z >= 1.0 && z.is_finite()) {
            return Err(Error::InvalidParameter(format!("z must be >= 1, got {z}")));
        }
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1/2), got {epsilon}"
            )));
        }
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1/2), got {delta}"
            )));
        }
        Ok(ClusteringParams { k, z, epsilon, delta })
    }

    /// k-median parameters (z = 1).
    pub fn k_median(k: usize, epsilon: f64, delta: f64) -> Result<Self> {
        ClusteringParams::new(k, 1.0, epsilon, delta)
    }
}

/// Adjacency entry: (neighbor, weight).
type Adj = Vec<Vec<(usize, f64)>>;

#[derive(Clone, Debug)]
enum Backend {
    Euclidean {
        dim: usize,
        /// Row-major coordinates, `dim` per point.
        coords: Vec<f64>,
    },
    Graph {
        adj: Adj,
    },
    Matrix {
        n: usize,
        /// Row-major symmetric distance table.
        table: Vec<f64>,
    },
}

/// Uniform distance oracle over an ambient space.
#[derive(Clone, Debug)]
pub struct MetricHandle {
    backend: Backend,
    size: usize,
}

impl MetricHandle {
    /// Euclidean backend from row-major coordinates.
    pub fn euclidean(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMetric("dimension must be >= 1".into()));
        }
        if coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidMetric(format!(
                "coordinate table length {} is not a nonzero multiple of dim {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidMetric("coordinates must be finite".into()));
        }
        let size = coords.len() / dim;
        Ok(MetricHandle {
            backend: Backend::Euclidean { dim, coords },
            size,
        })
    }

    /// Graph backend from an undirected edge list with positive weights.
    ///
    /// The graph must be connected: the shortest-path metric is undefined
    /// (infinite) on disconnected inputs and we refuse them up front.
    pub fn graph(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMetric("graph must have vertices".into()));
        }
        let mut adj: Adj = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidMetric(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidMetric(format!("self-loop at vertex {u}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidMetric(format!(
                    "edge ({u},{v}) weight must be positive and finite, got {w}"
                )));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for nb in &mut adj {
            nb.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        }
        // connectivity check from vertex 0
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(unreached) = seen.iter().position(|s| !s) {
            return Err(Error::DisconnectedGraph { unreached });
        }
        Ok(MetricHandle {
            backend: Backend::Graph { adj },
            size: n,
        })
    }

    /// Explicit-matrix backend. Symmetry and the zero diagonal are validated
    /// here; the triangle inequality only by [`MetricHandle::validate_triangle`],
    /// so tests can feed adversarial non-metric tables deliberately.
    pub fn matrix(n: usize, table: Vec<f64>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidMetric(format!(
                "table length {} does not match n^2 = {}",
                table.len(),
                n * n
            )));
        }
        for i in 0..n {
            if table[i * n + i] != 0.0 {
                return Err(Error::InvalidMetric(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                let a = table[i * n + j];
                let b = table[j * n + i];
                if a != b {
                    return Err(Error::InvalidMetric(format!(
                        "asymmetric entries at ({i},{j}): {a} vs {b}"
                    )));
                }
                if !(a >= 0.0 && a.is_finite()) {
                    return Err(Error::InvalidMetric(format!(
                        "entry ({i},{j}) must be nonnegative and finite, got {a}"
                    )));
                }
            }
        }
        Ok(MetricHandle {
            backend: Backend::Matrix { n, table },
            size: n,
        })
    }

    /// Ambient size `|V|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Euclidean dimension, if this is a Euclidean backend.
    pub fn dim(&self) -> Option<usize> {
        match &self.backend {
            Backend::Euclidean { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    /// Coordinates of one point (Euclidean backend only).
    pub fn coords_of(&self, id: PointId) -> Option<&[f64]> {
        match &self.backend {
            Backend::Euclidean { dim, coords } if id < self.size => {
                Some(&coords[id * dim..(id + 1) * dim])
            }
            _ => None,
        }
    }

    pub fn is_graph(&self) -> bool {
        matches!(self.backend, Backend::Graph { .. })
    }

    /// Adjacency list (graph backend only).
    pub fn adjacency(&self) -> Option<&Vec<Vec<(usize, f64)>>> {
        match &self.backend {
            Backend::Graph { adj } => Some(adj),
            _ => None,
        }
    }

    fn check_id(&self, id: PointId) -> Result<()> {
        if id >= self.size {
            return Err(Error::InvalidPointId {
                id,
                ambient: self.size,
            });
        }
        Ok(())
    }

    /// O(n^3) triangle-inequality sweep for the matrix backend.
    pub fn validate_triangle(&self) -> Result<()> {
        if let Backend::Matrix { n, table } = &self.backend {
            let n = *n;
            for x in 0..n {
                for v in 0..n {
                    for y in 0..n {
                        let lhs = table[x * n + y];
                        let rhs = table[x * n + v] + table[v * n + y];
                        if lhs > rhs + 1e-12 * rhs.max(1.0) {
                            return Err(Error::InvalidMetric(format!(
                                "triangle violation: d({x},{y}) = {lhs} > {rhs}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Distance between two ambient points.
pub fn distance(metric: &MetricHandle, x: PointId, y: PointId) -> Result<f64> {
    metric.check_id(x)?;
    metric.check_id(y)?;
    match &metric.backend {
        Backend::Euclidean { dim, coords } => {
            let a = &coords[x * dim..(x + 1) * dim];
            let b = &coords[y * dim..(y + 1) * dim];
            Ok(euclid(a, b))
        }
        Backend::Graph { adj } => {
            if x == y {
                return Ok(0.0);
            }
            let dist = dijkstra_from(adj, x);
            Ok(dist[y])
        }
        Backend::Matrix { n, table } => Ok(table[x * n + y]),
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Min-heap state for Dijkstra: orders by (dist, source label, vertex) so the
/// nearest-source tie-break (lowest source id) is deterministic.
#[derive(Copy, Clone, PartialEq)]
struct HeapItem {
    dist: f64,
    source: usize,
    vertex: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.source.cmp(&self.source))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra_from(adj: &Adj, start: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[start] = 0.0;
    heap.push(HeapItem {
        dist: 0.0,
        source: start,
        vertex: start,
    });
    while let Some(HeapItem { dist: d, vertex: u, .. }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapItem {
                    dist: nd,
                    source: start,
                    vertex: v,
                });
            }
        }
    }
    dist
}

/// Distance and nearest-source label for every ambient point.
///
/// Ties break to the lowest source id. The graph backend runs exactly one
/// Dijkstra sweep, seeded as if from a virtual point connected to every
/// source with weight zero.
pub fn distances_to_set(
    metric: &MetricHandle,
    sources: &CenterSet,
) -> Result<Vec<(f64, PointId)>> {
    for &c in sources.centers() {
        metric.check_id(c)?;
    }
    match &metric.backend {
        Backend::Graph { adj } => {
            let n = adj.len();
            let mut dist = vec![f64::INFINITY; n];
            let mut label = vec![usize::MAX; n];
            let mut heap = BinaryHeap::new();
            // sources sorted ascending: lowest id wins ties at distance 0
            for &s in sources.centers() {
                dist[s] = 0.0;
                label[s] = s;
                heap.push(HeapItem {
                    dist: 0.0,
                    source: s,
                    vertex: s,
                });
            }
            while let Some(HeapItem {
                dist: d,
                source,
                vertex: u,
            }) = heap.pop()
            {
                if d > dist[u] || (d == dist[u] && source > label[u]) {
                    continue;
                }
                for &(v, w) in &adj[u] {
                    let nd = d + w;
                    if nd < dist[v] || (nd == dist[v] && source < label[v]) {
                        dist[v] = nd;
                        label[v] = source;
                        heap.push(HeapItem {
                            dist: nd,
                            source,
                            vertex: v,
                        });
                    }
                }
            }
            Ok(dist.into_iter().zip(label).collect())
        }
        _ => {
            let mut out = Vec::with_capacity(metric.size);
            for v in 0..metric.size {
                let mut best = f64::INFINITY;
                let mut best_id = usize::MAX;
                for &c in sources.centers() {
                    let d = distance(metric, v, c)?;
                    if d < best || (d == best && c < best_id) {
                        best = d;
                        best_id = c;
                    }
                }
                out.push((best, best_id));
            }
            Ok(out)
        }
    }
}

/// `d^z` with exact fast paths for the common exponents, so every cost
/// evaluation in the crate agrees bit for bit.
pub fn pow_z(d: f64, z: f64) -> f64 {
    if z == 1.0 {
        d
    } else if z == 2.0 {
        d * d
    } else {
        d.powf(z)
    }
}

/// Clustering cost `cost_z(X, C) = sum_x w(x) * d(x, C)^z`.
pub fn cost(
    x: &WeightedPointSet,
    centers: &CenterSet,
    metric: &MetricHandle,
    z: f64,
) -> Result<f64> {
    for &p in x.points() {
        metric.check_id(p)?;
    }
    // one sweep for graphs; cheap per-point loop otherwise
    if metric.is_graph() {
        let table = distances_to_set(metric, centers)?;
        Ok(x.iter().map(|(p, w)| w * pow_z(table[p].0, z)).sum())
    } else {
        let mut total = 0.0;
        for (p, w) in x.iter() {
            let mut best = f64::INFINITY;
            for &c in centers.centers() {
                let d = distance(metric, p, c)?;
                if d < best {
                    best = d;
                }
            }
            total += w * pow_z(best, z);
        }
        Ok(total)
    }
}

/// Checks `d^z(x,y) <= 2^(z-1) * (d^z(x,x') + d^z(x',y))` on the given
/// triples, with 1e-12 relative slack.
pub fn power_triangle_check(
    metric: &MetricHandle,
    z: f64,
    triples: &[(PointId, PointId, PointId)],
) -> Result<bool> {
    if z < 1.0 {
        return Err(Error::InvalidParameter(format!("z must be >= 1, got {z}")));
    }
    let factor = (z - 1.0).exp2();
    for &(x, xp, y) in triples {
        let lhs = pow_z(distance(metric, x, y)?, z);
        let rhs = factor * (pow_z(distance(metric, x, xp)?, z) + pow_z(distance(metric, xp, y)?, z));
        if lhs > rhs * (1.0 + 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}
