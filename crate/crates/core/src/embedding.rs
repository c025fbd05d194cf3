//! Verified Gaussian projection for Euclidean inputs.
//!
//! A scaled Gaussian matrix maps the ambient space to
//! `t = ceil(c_jl * eps^-2 * ln max(|X|_0, 2))` dimensions. The distortion is
//! then *measured* on every pair (data point, candidate center): the matrix
//! is rescaled so the smallest measured ratio is exactly 1 (one-sided form),
//! and redrawn with a fresh stream when the spread exceeds the target. The
//! guarantee therefore holds on the finite verification set the downstream
//! pipeline queries, rather than on all of space.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::metric::{MetricHandle, PointId, WeightedPointSet};
use crate::rng::StreamRng;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectionEmbedding {
    pub source_dim: usize,
    pub target_dim: usize,
    /// Row-major `target_dim x source_dim`, already scaled by `1/sqrt(t)`.
    pub matrix: Vec<f64>,
    /// One-sided enforcement factor: smallest measured ratio becomes 1.
    pub post_scale: f64,
    /// Measured `max f/d - 1` after rescaling.
    pub verified_distortion: f64,
    pub seed: u64,
    pub retries_used: u32,
}

/// Target dimension `ceil(c_jl * eps^-2 * ln(max(n, 2)))`.
pub fn target_dimension(n_points: usize, epsilon: f64, c_jl: f64) -> usize {
    let n = n_points.max(2) as f64;
    ((c_jl * epsilon.powi(-2) * n.ln()).ceil() as usize).max(1)
}

fn gaussian_matrix(rng: &StreamRng, rows: usize, cols: usize) -> Vec<f64> {
    // one stream per row; Box-Muller on uniform pairs
    let data = exec::map_indexed(rows, |r| {
        let mut stream = rng.stream(r as u64);
        let mut row = Vec::with_capacity(cols);
        while row.len() < cols {
            let u1: f64 = stream.random::<f64>().max(f64::MIN_POSITIVE);
            let u2: f64 = stream.random();
            let mag = (-2.0 * u1.ln()).sqrt();
            row.push(mag * (std::f64::consts::TAU * u2).cos());
            if row.len() < cols {
                row.push(mag * (std::f64::consts::TAU * u2).sin());
            }
        }
        row
    });
    data.into_iter().flatten().collect()
}

fn project(matrix: &[f64], t: usize, m: usize, coords: &[f64]) -> Vec<f64> {
    (0..t)
        .map(|r| {
            matrix[r * m..(r + 1) * m]
                .iter()
                .zip(coords)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

fn norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Draws, verifies, and if needed redraws a Gaussian projection until the
/// measured distortion over all pairs (x in X, c in centers ∪ X) is at most
/// `epsilon`. Deterministic given `(seed, retry count)`.
pub fn build_embedding(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    ambient_centers: &[PointId],
    epsilon: f64,
    seed: u64,
    max_retries: u32,
    c_jl: f64,
) -> Result<ProjectionEmbedding> {
    let m = metric.dim().ok_or_else(|| {
        Error::UnsupportedConfiguration("projection embedding needs a Euclidean backend".into())
    })?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0,1), got {epsilon}"
        )));
    }
    let t = target_dimension(x.size(), epsilon, c_jl);
    let scale = 1.0 / (t as f64).sqrt();

    let mut targets: Vec<PointId> = ambient_centers
        .iter()
        .chain(x.points().iter())
        .copied()
        .collect();
    targets.sort_unstable();
    targets.dedup();
    for &p in &targets {
        if p >= metric.size() {
            return Err(Error::InvalidPointId {
                id: p,
                ambient: metric.size(),
            });
        }
    }

    let rng = StreamRng::new(seed);
    let mut best_eff = f64::INFINITY;
    for retry in 0..=max_retries {
        let mut matrix = gaussian_matrix(&rng.child(retry as u64), t, m);
        for v in &mut matrix {
            *v *= scale;
        }
        // project every verification point once
        let proj: Vec<Vec<f64>> = targets
            .iter()
            .map(|&p| project(&matrix, t, m, metric.coords_of(p).expect("euclidean")))
            .collect();
        let pos_of = |p: PointId| targets.binary_search(&p).expect("projected");

        // ratio extremes over all (x, target) pairs with d > 0; associative
        // min/max reduction, so the parallel sweep matches sequential
        let pairs: Vec<(usize, usize)> = x
            .points()
            .iter()
            .flat_map(|&xp| targets.iter().map(move |&c| (xp, c)))
            .filter(|&(a, b)| a != b)
            .collect();
        let (rmin, rmax) = exec::reduce_indexed(
            pairs.len(),
            (f64::INFINITY, 0.0f64),
            |i| {
                let (xp, c) = pairs[i];
                let d = norm(
                    metric.coords_of(xp).unwrap(),
                    metric.coords_of(c).unwrap(),
                );
                if d == 0.0 {
                    (f64::INFINITY, 0.0)
                } else {
                    let f = norm(&proj[pos_of(xp)], &proj[pos_of(c)]);
                    (f / d, f / d)
                }
            },
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        );

        if rmax == 0.0 {
            // single point (or all colocated): any matrix verifies
            return Ok(ProjectionEmbedding {
                source_dim: m,
                target_dim: t,
                matrix,
                post_scale: 1.0,
                verified_distortion: 0.0,
                seed,
                retries_used: retry,
            });
        }
        let eff = rmax / rmin - 1.0;
        if eff <= epsilon {
            return Ok(ProjectionEmbedding {
                source_dim: m,
                target_dim: t,
                matrix,
                post_scale: 1.0 / rmin,
                verified_distortion: eff,
                seed,
                retries_used: retry,
            });
        }
        if eff < best_eff {
            best_eff = eff;
        }
    }
    Err(Error::EmbeddingFailed {
        retries: max_retries,
        best_eff,
    })
}

/// Packages the verified projection as a Euclidean metric over the whole
/// ambient space: `f_x(c) = post_scale * |g(x) - g(c)|`.
pub fn embedded_metric(
    embedding: &ProjectionEmbedding,
    metric: &MetricHandle,
) -> Result<MetricHandle> {
    let m = metric.dim().ok_or_else(|| {
        Error::UnsupportedConfiguration("projection embedding needs a Euclidean backend".into())
    })?;
    if m != embedding.source_dim {
        return Err(Error::InvalidParameter(format!(
            "embedding built for dimension {}, metric has {m}",
            embedding.source_dim
        )));
    }
    let t = embedding.target_dim;
    let mut coords = Vec::with_capacity(metric.size() * t);
    for p in 0..metric.size() {
        let g = project(
            &embedding.matrix,
            t,
            m,
            metric.coords_of(p).expect("euclidean"),
        );
        coords.extend(g.into_iter().map(|v| v * embedding.post_scale));
    }
    MetricHandle::euclidean(t, coords)
}
