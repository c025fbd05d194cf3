//! Iterative size reduction: chain a base coreset constructor through a
//! rising accuracy schedule.
//!
//! The schedule runs `t` rounds at `eps_i = eps / (log^(i) n)^(1/rho)` with
//! per-round failure budget `delta_i = delta / |X_{i-1}|_0`, then one final
//! round at `(eps, delta)`. `t` is the largest integer whose iterated log of
//! the input size clears `max(20 * eps^-rho * s(k) * log2(1/delta),
//! rho * 2^(rho+1))`. A round that fails to shrink the support stops the
//! chain early; the final call always runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ClusteringParams, MetricHandle, WeightedPointSet};
use crate::rng::StreamRng;
use crate::sensitivity::{
    choose_sample_size, compute_sensitivities, sample_coreset_multiplicative, Coreset, Provenance,
    SamplingAlgorithm,
};
use crate::solvers::bicriteria_approx;

/// Input size, either a concrete count or a symbolic power of two, so
/// schedules for astronomically large set sizes stay computable.
#[derive(Clone, Copy, Debug)]
pub enum Magnitude {
    Count(usize),
    /// `Pow2(e)` stands for a set of size `2^e`.
    Pow2(f64),
}

impl Magnitude {
    fn log2(self) -> f64 {
        match self {
            Magnitude::Count(n) => (n as f64).log2(),
            Magnitude::Pow2(e) => e,
        }
    }

    fn at_least(self, threshold: f64) -> bool {
        match self {
            Magnitude::Count(n) => n as f64 >= threshold,
            // 2^e >= threshold  <=>  e >= log2(threshold)
            Magnitude::Pow2(e) => e >= threshold.log2(),
        }
    }
}

/// Accuracy schedule for the reduction chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionSchedule {
    pub t: usize,
    /// eps_1..eps_t (final round uses the target epsilon itself).
    pub eps_sequence: Vec<f64>,
    pub rho: f64,
    pub s_of_k: f64,
    /// The threshold `max(20 eps^-rho s(k) log2(1/delta), rho 2^(rho+1))`.
    pub threshold: f64,
    pub target_epsilon: f64,
    pub target_delta: f64,
    /// Iterated base-2 logs of the input size, starting at log^(1).
    pub iterated_logs: Vec<f64>,
}

impl ReductionSchedule {
    /// Per-round failure budget from the realized input size of the round.
    pub fn delta_for(&self, realized_size: usize) -> f64 {
        self.target_delta / realized_size.max(1) as f64
    }

    /// Product `prod_i (1 + eps_i)`; bounded by `exp(2 eps_t) <= 1 + 10 eps`.
    pub fn error_product(&self) -> f64 {
        self.eps_sequence.iter().map(|e| 1.0 + e).product()
    }
}

/// Builds the schedule. `log^(i)` of a value at most 1 terminates the chain
/// (iterated-log semantics), and `t = 0` means only the final call runs.
pub fn build_schedule(
    n0: Magnitude,
    params: &ClusteringParams,
    rho: f64,
    s_of_k: f64,
) -> Result<ReductionSchedule> {
    if rho < 1.0 {
        return Err(Error::InvalidParameter(format!("rho must be >= 1, got {rho}")));
    }
    if s_of_k <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "s_of_k must be positive, got {s_of_k}"
        )));
    }
    let threshold = (20.0 * params.epsilon.powf(-rho) * s_of_k * (1.0 / params.delta).log2())
        .max(rho * (rho + 1.0).exp2());

    // iterated logs: logs[0] = log2(n0), logs[i] = log2(logs[i-1])
    let mut logs: Vec<f64> = Vec::new();
    let first = n0.log2();
    if first > 1.0 {
        logs.push(first);
        while *logs.last().unwrap() > 1.0 {
            let next = logs.last().unwrap().log2();
            if next <= 1.0 {
                break;
            }
            logs.push(next);
        }
    }

    // t = largest integer with log^(t-1) n >= threshold; log^(0) n = n
    let mut t = 0usize;
    if n0.at_least(threshold) {
        t = 1;
        while t < logs.len() + 1 && logs[t - 1] >= threshold {
            t += 1;
        }
    }
    let t = t.min(logs.len()); // eps_i needs log^(i) n

    let eps_sequence: Vec<f64> = (1..=t)
        .map(|i| params.epsilon / logs[i - 1].powf(1.0 / rho))
        .collect();

    Ok(ReductionSchedule {
        t,
        eps_sequence,
        rho,
        s_of_k,
        threshold,
        target_epsilon: params.epsilon,
        target_delta: params.delta,
        iterated_logs: logs,
    })
}

/// A coreset constructor usable as the base algorithm of the reduction.
pub trait CoresetConstructor {
    #[allow(clippy::too_many_arguments)]
    fn construct(
        &self,
        x: &WeightedPointSet,
        metric: &MetricHandle,
        k: usize,
        z: f64,
        epsilon: f64,
        delta: f64,
        seed: u64,
    ) -> Result<Coreset>;
}

/// The standard base: bicriteria seeding, sensitivities, multiplicative
/// sampling. The effective dimension proxy grows with `log2` of the current
/// support size, matching a base whose coreset size is `poly(k/eps) * log n`.
#[derive(Clone, Copy, Debug)]
pub struct MultiplicativeConstructor {
    pub constant: f64,
    pub sdim_proxy: f64,
    /// Scale the proxy by `log2(max(n,2))` of the round's input.
    pub scale_sdim_by_log: bool,
}

impl MultiplicativeConstructor {
    pub fn effective_sdim(&self, n: usize) -> f64 {
        if self.scale_sdim_by_log {
            self.sdim_proxy * (n.max(2) as f64).log2()
        } else {
            self.sdim_proxy
        }
    }
}

impl CoresetConstructor for MultiplicativeConstructor {
    fn construct(
        &self,
        x: &WeightedPointSet,
        metric: &MetricHandle,
        k: usize,
        z: f64,
        epsilon: f64,
        delta: f64,
        seed: u64,
    ) -> Result<Coreset> {
        let params = ClusteringParams {
            k,
            z,
            epsilon,
            delta,
        };
        let rng = StreamRng::new(seed);
        let base = bicriteria_approx(x, metric, &params, rng.child(1).seed())?;
        let profile = compute_sensitivities(x, metric, &params, &base)?;
        let n = choose_sample_size(&params, self.effective_sdim(x.size()), self.constant);
        let coreset =
            sample_coreset_multiplicative(x, metric, &params, &profile, n, rng.child(2).seed())?;
        // provenance records the caller's seed, not the internal stream
        Ok(Coreset {
            provenance: Provenance {
                seed,
                ..coreset.provenance
            },
            entries: coreset.entries,
        })
    }
}

/// Identity constructor: returns its input unchanged. Exercises the
/// early-stop rule in tests.
#[derive(Clone, Copy, Debug)]
pub struct IdentityConstructor;

impl CoresetConstructor for IdentityConstructor {
    fn construct(
        &self,
        x: &WeightedPointSet,
        _metric: &MetricHandle,
        _k: usize,
        _z: f64,
        epsilon: f64,
        delta: f64,
        seed: u64,
    ) -> Result<Coreset> {
        Ok(Coreset {
            entries: x.iter().collect(),
            provenance: Provenance {
                seed,
                n_draws: x.size(),
                epsilon,
                delta,
                algorithm: SamplingAlgorithm::Multiplicative,
            },
        })
    }
}

/// Audit record of one reduction run. `realized_sizes` holds the input size,
/// the size after each applied round, and the final output size, so the
/// number of applied rounds is `realized_sizes.len() - 2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScheduleDump {
    pub t: usize,
    pub eps: Vec<f64>,
    pub realized_sizes: Vec<usize>,
    pub delta_spent: f64,
}

impl ScheduleDump {
    pub fn applied_rounds(&self) -> usize {
        self.realized_sizes.len().saturating_sub(2)
    }
}

/// Runs the chain. Every intermediate output must be a weighted subset of
/// its input (verified); a round whose output fails to shrink is discarded
/// and ends the chain. The final call at `(eps, delta)` always runs.
pub fn iterative_reduce(
    x: &WeightedPointSet,
    metric: &MetricHandle,
    params: &ClusteringParams,
    base: &dyn CoresetConstructor,
    rho: f64,
    s_of_k: f64,
    seed: u64,
) -> Result<(Coreset, ScheduleDump)> {
    let schedule = build_schedule(Magnitude::Count(x.size()), params, rho, s_of_k)?;
    let rng = StreamRng::new(seed);

    let mut current = x.clone();
    let mut realized_sizes = vec![current.size()];
    let mut delta_spent = 0.0;

    for (i, &eps_i) in schedule.eps_sequence.iter().enumerate() {
        let delta_i = schedule.delta_for(current.size());
        let round = base.construct(
            &current,
            metric,
            params.k,
            params.z,
            eps_i,
            delta_i,
            rng.child(1 + i as u64).seed(),
        )?;
        round.check_subset_of(&current)?;
        let next = round.as_weighted_set()?;
        if next.size() >= current.size() {
            break; // size stopped shrinking
        }
        delta_spent += delta_i;
        realized_sizes.push(next.size());
        current = next;
    }

    let final_round = base.construct(
        &current,
        metric,
        params.k,
        params.z,
        params.epsilon,
        params.delta,
        rng.child(u64::MAX).seed(),
    )?;
    final_round.check_subset_of(&current)?;
    delta_spent += params.delta;
    realized_sizes.push(final_round.size());

    let dump = ScheduleDump {
        t: schedule.t,
        eps: schedule.eps_sequence.clone(),
        realized_sizes,
        delta_spent,
    };
    let coreset = Coreset {
        entries: final_round.entries,
        provenance: Provenance {
            seed,
            n_draws: final_round.provenance.n_draws,
            epsilon: params.epsilon,
            delta: params.delta,
            algorithm: SamplingAlgorithm::Iterative,
        },
    };
    Ok((coreset, dump))
}
