//! Distance evaluator over a separator cover.
//!
//! For a data point `x` and candidate `c`, each part containing `c` offers an
//! estimate: the exact distance when the part also holds `x` (the simple
//! case), otherwise the best portal route through one of the part's
//! separator paths. The raw minimum over parts lies in
//! `[(1-eps) d, d/(1-eps)]`; dividing by `(1-eps)` yields the one-sided form
//! `d <= f <= d/(1-eps)^2` the sampling framework expects, which stays below
//! `(1 + 3 eps) d` for eps up to ~0.23.

use crate::error::{Error, Result};
use crate::harness::enumerate::DistanceRows;
use crate::metric::{MetricHandle, PointId, WeightedPointSet};
use crate::planar::portals::{
    approx_distance_through_path, build_portals, PortalStructure, SeparatorPath,
};
use crate::planar::PlanarDecomposition;

pub struct SeparatorMetric {
    epsilon: f64,
    n: usize,
    x_ids: Vec<PointId>,
    parts: Vec<PartData>,
    paths: Vec<SeparatorPath>,
    /// Portal structure of every ambient vertex on every path.
    portals: Vec<Vec<PortalStructure>>,
    /// All-pairs true distances.
    true_dist: Vec<Vec<f64>>,
}

struct PartData {
    vertex_mask: Vec<bool>,
    path_ids: Vec<usize>,
}

impl SeparatorMetric {
    /// Wires a decomposition (built for exactly the distinct points of `x`)
    /// into a distance evaluator.
    pub fn build(
        metric: &MetricHandle,
        decomp: &PlanarDecomposition,
        x: &WeightedPointSet,
        epsilon: f64,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1/2), got {epsilon}"
            )));
        }
        let mut x_sorted: Vec<PointId> = x.points().to_vec();
        x_sorted.sort_unstable();
        if x_sorted != decomp.s {
            return Err(Error::InvalidParameter(
                "decomposition was not built for the data set's points".into(),
            ));
        }
        let n = metric.size();
        let all: Vec<PointId> = (0..n).collect();
        let rows = DistanceRows::build(&all, metric)?;
        let true_dist: Vec<Vec<f64>> = (0..n).map(|v| rows.row(v).to_vec()).collect();

        let portals: Vec<Vec<PortalStructure>> = decomp
            .paths
            .iter()
            .map(|path| {
                (0..n)
                    .map(|v| {
                        let dist_row: Vec<f64> =
                            path.vertices.iter().map(|&p| true_dist[v][p]).collect();
                        build_portals(&dist_row, path, epsilon)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let parts = decomp
            .parts
            .iter()
            .map(|p| {
                let mut mask = vec![false; n];
                for &v in &p.vertices {
                    mask[v] = true;
                }
                PartData {
                    vertex_mask: mask,
                    path_ids: p.path_ids.clone(),
                }
            })
            .collect();

        Ok(SeparatorMetric {
            epsilon,
            n,
            x_ids: x_sorted,
            parts,
            paths: decomp.paths.clone(),
            portals,
            true_dist,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Two-sided estimate: within `(1 +- eps)` of the true distance.
    pub fn eval_raw(&self, x: PointId, c: PointId) -> f64 {
        debug_assert!(self.x_ids.binary_search(&x).is_ok(), "query point not in X");
        let mut best = f64::INFINITY;
        for part in &self.parts {
            if !part.vertex_mask[c] {
                continue;
            }
            let cand = if part.vertex_mask[x] {
                self.true_dist[x][c]
            } else {
                let mut through = f64::INFINITY;
                for &pid in &part.path_ids {
                    let est = approx_distance_through_path(
                        &self.portals[pid][x],
                        &self.portals[pid][c],
                        &self.paths[pid],
                    )
                    .expect("portal structures share epsilon");
                    if est < through {
                        through = est;
                    }
                }
                through
            };
            if cand < best {
                best = cand;
            }
        }
        debug_assert!(best.is_finite(), "cover must offer an estimate");
        best
    }

    /// One-sided estimate `f_x(c)`: raw estimate rescaled by `1/(1-eps)`.
    pub fn eval(&self, x: PointId, c: PointId) -> f64 {
        self.eval_raw(x, c) / (1.0 - self.epsilon)
    }

    /// Materializes the evaluator as an explicit-matrix handle so the whole
    /// sampling pipeline can run on it. Pairs with a data point on either
    /// side use the one-sided estimate (minimum when both sides qualify);
    /// other pairs fall back to true distances.
    pub fn to_matrix_metric(&self) -> Result<MetricHandle> {
        let n = self.n;
        let mut table = vec![0.0; n * n];
        for u in 0..n {
            for v in 0..u {
                let mut cand = f64::INFINITY;
                if self.x_ids.binary_search(&u).is_ok() {
                    cand = cand.min(self.eval(u, v));
                }
                if self.x_ids.binary_search(&v).is_ok() {
                    cand = cand.min(self.eval(v, u));
                }
                if !cand.is_finite() {
                    cand = self.true_dist[u][v];
                }
                table[u * n + v] = cand;
                table[v * n + u] = cand;
            }
        }
        MetricHandle::matrix(n, table)
    }

    pub fn true_distance(&self, u: PointId, v: PointId) -> f64 {
        self.true_dist[u][v]
    }
}
