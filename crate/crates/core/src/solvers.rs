//! Clustering solvers: a bicriteria seeder, an exact brute-force oracle, and
//! the partition-enumeration solver used on coresets.
//!
//! The bicriteria solver draws `2k` seeds by weighted D^z sampling and runs
//! one medoid-improvement pass; its quality is measured against the
//! brute-force oracle rather than proved. The partition solver enumerates
//! canonical set partitions (restricted growth strings) of the coreset into
//! at most `k` groups and picks an optimal ambient center per group, which is
//! exact on the weighted instance it is given.

use crate::error::{Error, Result};
use crate::exec;
use crate::harness::enumerate::{
    cost_via_rows, min_by_cost, pow_z, rows_for_set, CenterEnumeration, DistanceRows,
};
use crate::metric::{
    cost, distances_to_set, CenterSet, ClusteringParams, MetricHandle, PointId, WeightedPointSet,
};
use crate::rng::StreamRng;

/// Solution from the bicriteria seeder: at most `alpha * k` centers.
#[derive(Clone, Debug)]
pub struct BicriteriaSolution {
    pub centers: CenterSet,
    pub achieved_cost: f64,
    pub alpha: f64,
    /// Cost ratio against brute-force OPT; `None` until measured.
    pub beta_estimate: Option<f64>,
}

impl BicriteriaSolution {
    /// Measures beta against the exact optimum (exhaustive enumeration).
    pub fn measure_beta(
        &mut self,
        x: &WeightedPointSet,
        metric: &MetricHandle,
        k: usize,
        z: f64,
        budget: u64,
    ) -> Result<f64> {
        let exact = brute_force_opt(x, metric, k, z, budget)?;
        let beta = if exact.optimal_cost > 0.0 {
            self.achieved_cost / exact.optimal_cost
        } else if self.achieved_cost == 0.0 {
            1.0
        } else {
            f64::INFINITY
        };
        self.beta_estimate = Some(beta);
        Ok(beta)
    }
}

/// Exact optimum over all center sets of size at most `k`.
#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub centers: CenterSet,
    pub optimal_cost: f64,
}

/// Weighted D^z seeding (2k draws) followed by one medoid pass.
///
/// The first seed is drawn proportionally to point weight, later seeds
/// proportionally to `w(x) * d(x, chosen)^z`; a point already covered at
/// distance zero is never redrawn. Deterministic given the seed.
pub fn bicriteria_approx(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    params: &ClusteringParams,
    seed: u64,
) -> Result<BicriteriaSolution> {
    let n = x.size();
    let rng = StreamRng::new(seed);
    let target = (2 * params.k).min(n);
    let mut chosen: Vec<PointId> = Vec::with_capacity(target);
    // min distance from each data point to the chosen set
    let mut mind = vec![f64::INFINITY; n];

    for draw in 0..target {
        let weights: Vec<f64> = if chosen.is_empty() {
            x.weights().to_vec()
        } else {
            x.iter()
                .enumerate()
                .map(|(i, (_, w))| w * pow_z(mind[i], params.z))
                .collect()
        };
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            break; // every point covered exactly
        }
        let u = rng.uniform(draw as u64) * total;
        let mut acc = 0.0;
        let mut pick = n - 1;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if u < acc {
                pick = i;
                break;
            }
        }
        let center = x.points()[pick];
        chosen.push(center);
        // one sweep from the new center updates every point's distance
        let row = DistanceRows::build(&[center], metric)?;
        for (i, (p, _)) in x.iter().enumerate() {
            let d = row.dist(0, p);
            if d < mind[i] {
                mind[i] = d;
            }
        }
    }

    // medoid pass: replace each cluster's center by its best ambient point,
    // streaming one member row at a time to keep memory flat
    let seeds = CenterSet::new(chosen, 2 * params.k)?;
    let assign = distances_to_set(metric, &seeds)?;
    let mut improved: Vec<PointId> = Vec::with_capacity(seeds.len());
    for &c in seeds.centers() {
        let members: Vec<(PointId, f64)> = x
            .iter()
            .filter(|&(p, _)| assign[p].1 == c)
            .collect();
        if members.is_empty() {
            improved.push(c);
            continue;
        }
        let mut acc = vec![0.0f64; metric.size()];
        for &(p, w) in &members {
            let row = DistanceRows::build(&[p], metric)?;
            for (v, slot) in acc.iter_mut().enumerate() {
                *slot += w * pow_z(row.dist(0, v), params.z);
            }
        }
        let mut best = (f64::INFINITY, c);
        for (v, &total) in acc.iter().enumerate() {
            if total < best.0 || (total == best.0 && v < best.1) {
                best = (total, v);
            }
        }
        improved.push(best.1);
    }
    let centers = CenterSet::new(improved, 2 * params.k)?;
    let achieved_cost = cost(x, &centers, metric, params.z)?;
    Ok(BicriteriaSolution {
        centers,
        achieved_cost,
        alpha: 2.0,
        beta_estimate: None,
    })
}

/// Exact minimizer of `cost_z` over every center set of size <= k.
///
/// Refuses instances beyond the enumeration budget instead of silently
/// approximating. Ties break lexicographically on the sorted center ids.
pub fn brute_force_opt(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    k: usize,
    z: f64,
    budget: u64,
) -> Result<ExactSolution> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let en = CenterEnumeration::new(metric.size(), k);
    let total = en.check_budget(budget)?;
    let rows = rows_for_set(x, metric)?;
    let weights = x.weights().to_vec();
    let (opt_cost, opt_centers) = exec::reduce_indexed(
        total as usize,
        (f64::INFINITY, Vec::new()),
        |rank| {
            let subset = en.subset_at(rank as u64);
            let c = cost_via_rows(&rows, &weights, &subset, z);
            (c, subset)
        },
        min_by_cost,
    );
    Ok(ExactSolution {
        centers: CenterSet::new(opt_centers, k)?,
        optimal_cost: opt_cost,
    })
}

/// Visits every partition of `0..n` into at most `k` nonempty blocks, encoded
/// as restricted growth strings, so each partition appears exactly once.
pub(crate) fn for_each_partition(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    assert!(n > 0 && k > 0);
    let mut a = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        f(&a);
        let mut i = n;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            // can bump a[i] while staying a valid growth string with < k blocks
            if a[i] <= maxes[i - 1] && a[i] + 1 < k {
                a[i] += 1;
                maxes[i] = maxes[i - 1].max(a[i]);
                for j in i + 1..n {
                    a[j] = 0;
                    maxes[j] = maxes[j - 1];
                }
                break;
            }
        }
    }
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Exact solver for small weighted instances: enumerates all clusterings of
/// the points into at most `k` groups and picks the best ambient center for
/// each group. Matches [`brute_force_opt`] on cost wherever both run.
pub fn fpt_solve(
    d: &WeightedPointSet,
    metric: &MetricHandle,
    k: usize,
    z: f64,
    budget: u64,
) -> Result<ExactSolution> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let n = d.size();
    let needed = saturating_pow(k as u128, n);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let rows = rows_for_set(d, metric)?;
    let weights = d.weights();
    let ambient = metric.size();

    let mut best: (f64, Vec<PointId>) = (f64::INFINITY, Vec::new());
    for_each_partition(n, k, |labels| {
        let blocks = labels.iter().copied().max().unwrap_or(0) + 1;
        let mut total = 0.0;
        let mut centers: Vec<PointId> = Vec::with_capacity(blocks);
        for b in 0..blocks {
            // optimal center for this block over the whole ambient set
            let mut block_best = (f64::INFINITY, usize::MAX);
            for v in 0..ambient {
                let mut acc = 0.0;
                for (i, &lab) in labels.iter().enumerate() {
                    if lab == b {
                        acc += weights[i] * pow_z(rows.dist(i, v), z);
                    }
                }
                if acc < block_best.0 || (acc == block_best.0 && v < block_best.1) {
                    block_best = (acc, v);
                }
            }
            total += block_best.0;
            centers.push(block_best.1);
        }
        centers.sort_unstable();
        centers.dedup();
        best = min_by_cost(std::mem::take(&mut best), (total, centers));
    });

    // canonical cost of the assembled centers, same evaluation path as the
    // brute-force oracle
    let canonical = cost_via_rows(&rows, weights, &best.1, z);
    Ok(ExactSolution {
        centers: CenterSet::new(best.1, k)?,
        optimal_cost: canonical,
    })
}

/// Convenience wrapper: bicriteria solution with beta measured when the
/// instance is small enough to brute-force.
pub fn bicriteria_with_beta(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    params: &ClusteringParams,
    seed: u64,
    budget: u64,
) -> Result<BicriteriaSolution> {
    let mut sol = bicriteria_approx(x, metric, params, seed)?;
    if CenterEnumeration::new(metric.size(), params.k)
        .check_budget(budget)
        .is_ok()
    {
        sol.measure_beta(x, metric, params.k, params.z, budget)?;
    }
    Ok(sol)
}
