//! Sensitivity estimation and the two importance-sampling constructions.
//!
//! Sensitivities are over-estimated from a bicriteria solution via
//! `sigma(x) = w(x) * (d(x,C*)^z / cost_z(X,C*) + 1 / w(cluster(x)))`,
//! whose total is at most `1 + alpha*k`. Coresets are drawn i.i.d. with
//! probability proportional to sigma and reweighted by `w / (p*N)`, which
//! makes every fixed center set's cost an unbiased estimate. The additive
//! variant (k-median only) additionally reports how well the sample
//! preserves the cost at the seeding solution itself.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::harness::enumerate::pow_z;
use crate::metric::{
    distances_to_set, ClusteringParams, MetricHandle, PointId, WeightedPointSet,
};
use crate::rng::StreamRng;
use crate::solvers::BicriteriaSolution;

/// Per-point sensitivity over-estimates for one data set and base solution.
#[derive(Clone, Debug)]
pub struct SensitivityProfile {
    /// sigma(x) in data-set order.
    pub sigma: Vec<f64>,
    pub sigma_total: f64,
    pub base: BicriteriaSolution,
    /// Nearest base center per data point (lowest-id tie-break).
    pub assignment: Vec<PointId>,
    /// Total data weight attached to each used base center, sorted by id.
    pub cluster_weight: Vec<(PointId, f64)>,
    /// cost_z(X, C*) under the same metric the profile was built with.
    pub base_cost: f64,
    z: f64,
}

impl SensitivityProfile {
    /// Sampling distribution `p_x = sigma_x / sigma_total`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.sigma.iter().map(|s| s / self.sigma_total).collect()
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Sensitivity formula from the bicriteria solution.
///
/// When `cost_z(X, C*) = 0` the cost addend is defined as zero; the cluster
/// term keeps every sigma strictly positive.
pub fn compute_sensitivities(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    params: &ClusteringParams,
    base: &BicriteriaSolution,
) -> Result<SensitivityProfile> {
    let table = distances_to_set(metric, &base.centers)?;
    let base_cost: f64 = x
        .iter()
        .map(|(p, w)| w * pow_z(table[p].0, params.z))
        .sum();

    let assignment: Vec<PointId> = x.points().iter().map(|&p| table[p].1).collect();
    let mut cluster_weight: Vec<(PointId, f64)> = Vec::new();
    for (i, (_, w)) in x.iter().enumerate() {
        let c = assignment[i];
        match cluster_weight.binary_search_by_key(&c, |e| e.0) {
            Ok(pos) => cluster_weight[pos].1 += w,
            Err(pos) => cluster_weight.insert(pos, (c, w)),
        }
    }

    let sigma: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, (p, w))| {
            let cost_term = if base_cost > 0.0 {
                pow_z(table[p].0, params.z) / base_cost
            } else {
                0.0
            };
            let cw = cluster_weight
                .iter()
                .find(|e| e.0 == assignment[i])
                .expect("assigned center must have cluster weight")
                .1;
            w * (cost_term + 1.0 / cw)
        })
        .collect();
    let sigma_total: f64 = sigma.iter().sum();

    Ok(SensitivityProfile {
        sigma,
        sigma_total,
        base: base.clone(),
        assignment,
        cluster_weight,
        base_cost,
        z: params.z,
    })
}

/// Sample size for the multiplicative construction:
/// `ceil(constant * eps^-2 * 2^(2z) * k * (z*k*log2(k+1)*sdim + ln(1/delta)))`.
pub fn choose_sample_size(params: &ClusteringParams, sdim_proxy: f64, constant: f64) -> usize {
    let k = params.k as f64;
    let dim_term = params.z * k * (k + 1.0).log2() * sdim_proxy;
    let n = constant
        * params.epsilon.powi(-2)
        * (2.0 * params.z).exp2()
        * k
        * (dim_term + (1.0 / params.delta).ln());
    (n.ceil() as usize).max(1)
}

/// Sample size for the additive construction: the multiplicative size plus
/// the `k^2 * ln(1/delta)` addend. k-median only.
pub fn choose_sample_size_additive(
    params: &ClusteringParams,
    sdim_proxy: f64,
    constant: f64,
) -> Result<usize> {
    if params.z != 1.0 {
        return Err(Error::UnsupportedConfiguration(format!(
            "additive sampling is defined for z = 1, got z = {}",
            params.z
        )));
    }
    let k = params.k as f64;
    let addend = (constant * k * k * (1.0 / params.delta).ln()).ceil() as usize;
    Ok(choose_sample_size(params, sdim_proxy, constant) + addend)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingAlgorithm {
    Multiplicative,
    Additive,
    Iterative,
}

impl std::fmt::Display for SamplingAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SamplingAlgorithm::Multiplicative => "multiplicative",
            SamplingAlgorithm::Additive => "additive",
            SamplingAlgorithm::Iterative => "iterative",
        };
        f.write_str(s)
    }
}

/// How a coreset was produced.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    #[serde(rename = "N")]
    pub n_draws: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub algorithm: SamplingAlgorithm,
}

/// Weighted subset of a data set, duplicates merged, sorted by point id.
/// The canonical JSON form lives in [`crate::io`].
#[derive(Clone, Debug)]
pub struct Coreset {
    pub entries: Vec<(PointId, f64)>,
    pub provenance: Provenance,
}

impl Coreset {
    /// Number of distinct points.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn as_weighted_set(&self) -> Result<WeightedPointSet> {
        WeightedPointSet::new(
            self.entries.iter().map(|e| e.0).collect(),
            self.entries.iter().map(|e| e.1).collect(),
        )
    }

    /// Every entry must reference a point of `x`.
    pub fn check_subset_of(&self, x: &WeightedPointSet) -> Result<()> {
        for &(id, w) in &self.entries {
            if !x.points().contains(&id) {
                return Err(Error::InvalidParameter(format!(
                    "coreset entry {id} is not a point of the source set"
                )));
            }
            if w <= 0.0 || w.is_nan() {
                return Err(Error::InvalidParameter(format!(
                    "coreset entry {id} has nonpositive weight {w}"
                )));
            }
        }
        Ok(())
    }
}

/// Draw indices for `n_draws` i.i.d. samples from the profile distribution.
/// Draw `i` is a pure function of `(seed, i)`, so parallel generation matches
/// the sequential order exactly.
fn draw_indices(profile: &SensitivityProfile, n_draws: usize, seed: u64) -> Vec<usize> {
    let cumulative: Vec<f64> = profile
        .sigma
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().expect("profile is nonempty");
    let rng = StreamRng::new(seed);
    exec::map_indexed(n_draws, move |i| {
        let u = rng.uniform(i as u64) * total;
        match cumulative.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(pos) => pos + 1, // boundary hit: value u falls in the next bucket
            Err(pos) => pos,
        }
        .min(cumulative.len() - 1)
    })
}

fn merge_draws(
    x: &WeightedPointSet,
    probabilities: &[f64],
    draws: &[usize],
    n_draws: usize,
) -> Vec<(PointId, f64)> {
    let mut counts = vec![0usize; x.size()];
    for &d in draws {
        counts[d] += 1;
    }
    let mut entries: Vec<(PointId, f64)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(i, &c)| {
            let w = x.weights()[i];
            (
                x.points()[i],
                (c as f64) * w / (probabilities[i] * n_draws as f64),
            )
        })
        .collect();
    entries.sort_unstable_by_key(|e| e.0);
    entries
}

/// Importance sampling with multiplicative-distortion guarantees.
pub fn sample_coreset_multiplicative(
    x: &WeightedPointSet,
    _metric: &MetricHandle,
    params: &ClusteringParams,
    profile: &SensitivityProfile,
    n_draws: usize,
    seed: u64,
) -> Result<Coreset> {
    if n_draws == 0 {
        return Err(Error::InvalidParameter("need at least one draw".into()));
    }
    if profile.sigma.len() != x.size() {
        return Err(Error::InvalidParameter(
            "profile does not match the data set".into(),
        ));
    }
    let draws = draw_indices(profile, n_draws, seed);
    let entries = merge_draws(x, &profile.probabilities(), &draws, n_draws);
    Ok(Coreset {
        entries,
        provenance: Provenance {
            seed,
            n_draws,
            epsilon: params.epsilon,
            delta: params.delta,
            algorithm: SamplingAlgorithm::Multiplicative,
        },
    })
}

/// Additive-variant sampling (k-median only). Returns the coreset plus the
/// weak-coreset ratio `sum_D w_D(x) d(x,C*) / cost(X,C*)`, which concentrates
/// near 1 and stays below 2 with high probability.
pub fn sample_coreset_additive(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    params: &ClusteringParams,
    profile: &SensitivityProfile,
    n_draws: usize,
    seed: u64,
) -> Result<(Coreset, f64)> {
    if params.z != 1.0 || profile.z() != 1.0 {
        return Err(Error::UnsupportedConfiguration(format!(
            "additive sampling is defined for z = 1, got z = {}",
            params.z
        )));
    }
    let coreset = sample_coreset_multiplicative(x, metric, params, profile, n_draws, seed)?;
    let coreset = Coreset {
        provenance: Provenance {
            algorithm: SamplingAlgorithm::Additive,
            ..coreset.provenance
        },
        entries: coreset.entries,
    };

    let table = distances_to_set(metric, &profile.base.centers)?;
    let estimate: f64 = coreset
        .entries
        .iter()
        .map(|&(id, w)| w * table[id].0)
        .sum();
    let ratio = if profile.base_cost > 0.0 {
        estimate / profile.base_cost
    } else {
        1.0
    };
    Ok((coreset, ratio))
}
