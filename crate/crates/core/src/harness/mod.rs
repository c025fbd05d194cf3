//! Exhaustive and statistical verification of the pipeline's guarantees.
//!
//! [`certify_coreset`] sweeps every center set of size at most `k` and
//! reports the exact worst-case relative cost error of a coreset.
//! [`certify_sensitivities`] brute-forces the true sensitivities and checks
//! both directions of the over-estimate. [`enumerate_ball_system`] counts
//! the distinct metric balls a distance-row family induces, as an empirical
//! probe of its shattering behavior.

pub mod enumerate;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec;
use crate::metric::{MetricHandle, PointId, WeightedPointSet};
use crate::rng::StreamRng;
use crate::sensitivity::SensitivityProfile;
use crate::solvers::brute_force_opt;
use enumerate::{max_by_value, pow_z, rows_for_set, CenterEnumeration, DistanceRows};

/// How a certification sweep covered the candidate space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    /// Every center set of size at most k was evaluated.
    Exhaustive,
    /// Budget exceeded: random sets plus all singletons.
    Sampled,
}

/// Result of a coreset certification sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoresetReport {
    pub max_relative_error: f64,
    pub argmax_center_set: Vec<PointId>,
    pub enumerated_count: u64,
    pub epsilon_target: f64,
    pub pass: bool,
    pub mode: CertifyMode,
    /// Center set where `cost(X,C) = 0` but `cost(D,C) != 0`, if any.
    pub zero_cost_violation: Option<Vec<PointId>>,
}

fn relative_error_sweep(
    candidates: &[Vec<PointId>],
    x_rows: &DistanceRows,
    x_weights: &[f64],
    d_rows: &DistanceRows,
    d_weights: &[f64],
    z: f64,
) -> (f64, Vec<PointId>, Option<Vec<PointId>>) {
    type Acc = (f64, Vec<PointId>, Option<Vec<PointId>>);
    let combine = |a: Acc, b: Acc| {
        let zero = match (a.2.clone(), b.2.clone()) {
            (Some(p), Some(q)) => Some(if p <= q { p } else { q }),
            (Some(p), None) => Some(p),
            (None, q) => q,
        };
        let (err, arg) = max_by_value((a.0, a.1), (b.0, b.1));
        (err, arg, zero)
    };
    exec::reduce_indexed(
        candidates.len(),
        (0.0, Vec::new(), None),
        |i| {
            let c = &candidates[i];
            let cx: f64 = x_weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * pow_z(x_rows.dist_to_subset(j, c), z))
                .sum();
            let cd: f64 = d_weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * pow_z(d_rows.dist_to_subset(j, c), z))
                .sum();
            if cx == 0.0 {
                // vacuous-or-exact: a true subset must also cost zero
                if cd != 0.0 {
                    (0.0, Vec::new(), Some(c.clone()))
                } else {
                    (0.0, Vec::new(), None)
                }
            } else {
                ((cd - cx).abs() / cx, c.clone(), None)
            }
        },
        combine,
    )
}

/// Exact worst-case relative error of `d` against `x` over all center sets
/// of size at most `k`. Falls back to a sampled sweep (flagged in the
/// report) when the candidate space exceeds `budget`.
pub fn certify_coreset(
    x: &WeightedPointSet,
    d: &WeightedPointSet,
    metric: &MetricHandle,
    k: usize,
    z: f64,
    epsilon: f64,
    budget: u64,
) -> Result<CoresetReport> {
    let en = CenterEnumeration::new(metric.size(), k);
    let (candidates, mode) = match en.check_budget(budget) {
        Ok(total) => {
            let sets: Vec<Vec<PointId>> =
                (0..total).map(|rank| en.subset_at(rank)).collect();
            (sets, CertifyMode::Exhaustive)
        }
        Err(_) => {
            // all singletons plus budgeted random k-sets, deterministic seed
            let rng = StreamRng::new(0xC0FFEE);
            let n = metric.size();
            let mut sets: Vec<Vec<PointId>> = (0..n).map(|v| vec![v]).collect();
            let want = (budget as usize).saturating_sub(n).max(1);
            for i in 0..want {
                let mut stream = rng.stream(i as u64);
                let mut s: Vec<PointId> = (0..k)
                    .map(|_| (rand::Rng::random::<u64>(&mut stream) as usize) % n)
                    .collect();
                s.sort_unstable();
                s.dedup();
                sets.push(s);
            }
            (sets, CertifyMode::Sampled)
        }
    };

    let x_rows = rows_for_set(x, metric)?;
    let d_rows = rows_for_set(d, metric)?;
    let (max_err, argmax, zero_violation) = relative_error_sweep(
        &candidates,
        &x_rows,
        x.weights(),
        &d_rows,
        d.weights(),
        z,
    );
    let pass = zero_violation.is_none() && max_err <= epsilon;
    Ok(CoresetReport {
        max_relative_error: if zero_violation.is_some() {
            f64::INFINITY
        } else {
            max_err
        },
        argmax_center_set: argmax,
        enumerated_count: candidates.len() as u64,
        epsilon_target: epsilon,
        pass,
        mode,
        zero_cost_violation: zero_violation,
    })
}

/// Both directions of the sensitivity lemma, checked exhaustively.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SensitivityReport {
    /// Per point: `sigma(x) * (beta+1) * 2^(2z-2) - sigma*(x)`.
    pub margins: Vec<f64>,
    pub sigma_total: f64,
    pub sigma_total_bound: f64,
    pub beta_measured: f64,
    pub pass: bool,
}

/// Computes the true sensitivities `sigma*(x)` by enumerating every center
/// set (excluding zero-cost sets, where the ratio is undefined) and checks
/// the lower bound `sigma(x) * (beta+1) * 2^(2z-2) >= sigma*(x)` per point,
/// plus the total upper bound `sigma_total <= 1 + alpha*k`.
pub fn certify_sensitivities(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    k: usize,
    z: f64,
    profile: &SensitivityProfile,
    budget: u64,
) -> Result<SensitivityReport> {
    let en = CenterEnumeration::new(metric.size(), k);
    let total = en.check_budget(budget)?;
    let rows = rows_for_set(x, metric)?;
    let n = x.size();

    let mut sigma_star = vec![0.0f64; n];
    for rank in 0..total {
        let c = en.subset_at(rank);
        let cost_c: f64 = x
            .weights()
            .iter()
            .enumerate()
            .map(|(j, w)| w * pow_z(rows.dist_to_subset(j, &c), z))
            .sum();
        if cost_c == 0.0 {
            continue;
        }
        for (j, w) in x.weights().iter().enumerate() {
            let contrib = w * pow_z(rows.dist_to_subset(j, &c), z) / cost_c;
            if contrib > sigma_star[j] {
                sigma_star[j] = contrib;
            }
        }
    }

    let opt = brute_force_opt(x, metric, k, z, budget)?;
    let beta = if opt.optimal_cost > 0.0 {
        profile.base.achieved_cost / opt.optimal_cost
    } else if profile.base.achieved_cost == 0.0 {
        1.0
    } else {
        f64::INFINITY
    };

    let factor = (beta + 1.0) * (2.0 * z - 2.0).exp2();
    let margins: Vec<f64> = profile
        .sigma
        .iter()
        .zip(&sigma_star)
        .map(|(s, star)| s * factor - star)
        .collect();
    let bound = 1.0 + profile.base.alpha * k as f64;
    let pass = margins.iter().all(|&m| m >= -1e-9) && profile.sigma_total <= bound + 1e-9;
    Ok(SensitivityReport {
        margins,
        sigma_total: profile.sigma_total,
        sigma_total_bound: bound,
        beta_measured: beta,
        pass,
    })
}

/// Distinct metric balls induced by a family of distance rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallSystemCount {
    pub distinct_ball_count: usize,
    pub row_count: usize,
    /// `log_{|H|}(count)`; growth exponent of the ball system.
    pub exponent_estimate: f64,
}

/// Counts distinct balls `{x : v(x) * d(x,c) <= r}` over every column `c`
/// and every threshold `r >= 0`. Exact: per column only the sorted-prefix
/// subsets can occur, so all thresholds between consecutive distinct values
/// collapse.
pub fn enumerate_ball_system(rows: &[Vec<f64>], v: Option<&[f64]>) -> BallSystemCount {
    let row_count = rows.len();
    if row_count == 0 {
        return BallSystemCount {
            distinct_ball_count: 0,
            row_count: 0,
            exponent_estimate: 0.0,
        };
    }
    let cols = rows[0].len();
    let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    let blocks = row_count.div_ceil(64);
    #[allow(clippy::needless_range_loop)]
    for c in 0..cols {
        let mut vals: Vec<(f64, usize)> = (0..row_count)
            .map(|i| {
                let scale = v.map_or(1.0, |vv| vv[i]);
                (scale * rows[i][c], i)
            })
            .collect();
        vals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut mask = vec![0u64; blocks];
        // empty ball exists whenever the smallest value is positive (r = 0)
        if vals[0].0 > 0.0 {
            seen.insert(mask.clone());
        }
        let mut idx = 0;
        while idx < row_count {
            let val = vals[idx].0;
            while idx < row_count && vals[idx].0 == val {
                let i = vals[idx].1;
                mask[i / 64] |= 1u64 << (i % 64);
                idx += 1;
            }
            seen.insert(mask.clone());
        }
    }
    let count = seen.len();
    let exponent = if row_count >= 2 {
        (count as f64).ln() / (row_count as f64).ln()
    } else {
        0.0
    };
    BallSystemCount {
        distinct_ball_count: count,
        row_count,
        exponent_estimate: exponent,
    }
}

/// Brute-force oracle for [`enumerate_ball_system`]: tries every threshold in
/// `{0} ∪ {observed values}` per column.
pub fn enumerate_ball_system_oracle(rows: &[Vec<f64>], v: Option<&[f64]>) -> usize {
    let row_count = rows.len();
    if row_count == 0 {
        return 0;
    }
    let cols = rows[0].len();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    #[allow(clippy::needless_range_loop)]
    for c in 0..cols {
        let vals: Vec<f64> = (0..row_count)
            .map(|i| v.map_or(1.0, |vv| vv[i]) * rows[i][c])
            .collect();
        let mut thresholds: Vec<f64> = vals.clone();
        thresholds.push(0.0);
        for &r in &thresholds {
            let ball: Vec<usize> = (0..row_count).filter(|&i| vals[i] <= r).collect();
            seen.insert(ball);
        }
    }
    seen.len()
}
