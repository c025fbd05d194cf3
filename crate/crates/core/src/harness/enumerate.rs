//! Exhaustive center-set enumeration with budget accounting.
//!
//! `V^k` here is every nonempty subset of the ambient space of size at most
//! `k`. Subsets are addressed by a global rank (sizes ascending, lexicographic
//! within a size) so sweeps can be partitioned across workers while keeping
//! deterministic tie-breaking: on equal objective the lexicographically
//! smaller id tuple wins (shorter prefix first).

use crate::error::{Error, Result};
use crate::metric::{distances_to_set, CenterSet, MetricHandle, PointId, WeightedPointSet};

fn binomial(n: u128, j: u128) -> u128 {
    if j > n {
        return 0;
    }
    let j = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Rank-addressable enumeration of all center sets of size 1..=k.
#[derive(Clone, Debug)]
pub struct CenterEnumeration {
    n: usize,
    /// (size, count, starting rank) per subset size.
    layout: Vec<(usize, u128, u128)>,
    total: u128,
}

impl CenterEnumeration {
    pub fn new(n: usize, k: usize) -> Self {
        let mut layout = Vec::new();
        let mut total: u128 = 0;
        for j in 1..=k.min(n) {
            let count = binomial(n as u128, j as u128);
            layout.push((j, count, total));
            total = total.saturating_add(count);
        }
        CenterEnumeration { n, layout, total }
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    /// Errors with `BudgetExceeded` when the sweep would be larger than `budget`.
    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        if self.total > budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: self.total,
                budget,
            });
        }
        Ok(self.total as u64)
    }

    /// Subset at the given global rank (lexicographic within its size).
    pub fn subset_at(&self, rank: u64) -> Vec<PointId> {
        let rank = rank as u128;
        let &(j, _, offset) = self
            .layout
            .iter()
            .rev()
            .find(|&&(_, _, off)| rank >= off)
            .expect("rank out of range");
        let mut r = rank - offset;
        let mut subset = Vec::with_capacity(j);
        let mut next = 0usize;
        for slot in 0..j {
            let remaining = j - slot - 1;
            let mut c = next;
            loop {
                let with_c = binomial((self.n - c - 1) as u128, remaining as u128);
                if r < with_c {
                    subset.push(c);
                    next = c + 1;
                    break;
                }
                r -= with_c;
                c += 1;
            }
        }
        subset
    }
}

fn tie_break(a: (f64, Vec<PointId>), b: (f64, Vec<PointId>)) -> (f64, Vec<PointId>) {
    if a.1.is_empty() || (!b.1.is_empty() && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Prefer lower error/cost; break ties toward the lexicographically smaller
/// candidate tuple. Associative, so safe for parallel reduction.
pub fn min_by_cost(a: (f64, Vec<PointId>), b: (f64, Vec<PointId>)) -> (f64, Vec<PointId>) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => tie_break(a, b),
    }
}

/// Mirror of [`min_by_cost`] keeping the maximal value.
pub fn max_by_value(a: (f64, Vec<PointId>), b: (f64, Vec<PointId>)) -> (f64, Vec<PointId>) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => tie_break(a, b),
    }
}

/// Dense distance rows from a list of query points to the whole ambient space.
///
/// Graph backends pay one Dijkstra sweep per query point; the other backends
/// a plain scan. Rows make exhaustive sweeps O(1) per distance lookup.
#[derive(Clone, Debug)]
pub struct DistanceRows {
    ids: Vec<PointId>,
    rows: Vec<Vec<f64>>,
}

impl DistanceRows {
    pub fn build(ids: &[PointId], metric: &MetricHandle) -> Result<Self> {
        let mut rows = Vec::with_capacity(ids.len());
        for &p in ids {
            let single = CenterSet::new(vec![p], 1)?;
            let table = distances_to_set(metric, &single)?;
            rows.push(table.into_iter().map(|(d, _)| d).collect());
        }
        Ok(DistanceRows {
            ids: ids.to_vec(),
            rows,
        })
    }

    pub fn ids(&self) -> &[PointId] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn dist(&self, i: usize, v: PointId) -> f64 {
        self.rows[i][v]
    }

    /// `min_{c in subset} d(point_i, c)`.
    pub fn dist_to_subset(&self, i: usize, subset: &[PointId]) -> f64 {
        subset
            .iter()
            .map(|&c| self.rows[i][c])
            .fold(f64::INFINITY, f64::min)
    }
}

pub use crate::metric::pow_z;

/// `cost_z` of a weighted set against one candidate subset, via rows.
pub fn cost_via_rows(
    rows: &DistanceRows,
    weights: &[f64],
    subset: &[PointId],
    z: f64,
) -> f64 {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| w * pow_z(rows.dist_to_subset(i, subset), z))
        .sum()
}

/// Rows for a weighted set in its own point order.
pub fn rows_for_set(x: &WeightedPointSet, metric: &MetricHandle) -> Result<DistanceRows> {
    DistanceRows::build(x.points(), metric)
}
