//! Acceptance suite: one test (and one printed pass/fail line) per criterion.
//!
//! Run with `cargo test -p coreset-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines; every tolerance is pinned in code.

mod instances;

use std::time::Instant;

use coreset_core::calibration;
use coreset_core::embedding::{build_embedding, embedded_metric};
use coreset_core::harness::enumerate::DistanceRows;
use coreset_core::harness::{certify_coreset, certify_sensitivities};
use coreset_core::metric::{
    cost, power_triangle_check, ClusteringParams, MetricHandle, WeightedPointSet,
};
use coreset_core::planar::generators::{grid_instance, random_planar_instance};
use coreset_core::planar::portals::{
    approx_distance_through_path, build_portals, through_path_oracle, PortalStructure,
};
use coreset_core::planar::{decompose, verify_decomposition};
use coreset_core::reduce::{
    build_schedule, iterative_reduce, CoresetConstructor, Magnitude, MultiplicativeConstructor,
};
use coreset_core::rng::StreamRng;
use coreset_core::sensitivity::{
    choose_sample_size_additive, compute_sensitivities, sample_coreset_additive,
};
use coreset_core::solvers::{bicriteria_approx, brute_force_opt, fpt_solve};
use instances::{criterion_one_instances, sensitivity_instances};
use rand::Rng;

fn conclude(criterion: u32, name: &str, pass: bool, detail: String) {
    println!(
        "criterion {criterion} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}

fn base_constructor() -> MultiplicativeConstructor {
    let cal = calibration::defaults();
    MultiplicativeConstructor {
        constant: cal.sampling_constant,
        sdim_proxy: cal.sdim_proxy,
        scale_sdim_by_log: false,
    }
}

/// Criterion 1: multiplicative coreset guarantee, exhaustively certified on
/// 20 fixed instances, eps 0.2, delta 0.1, >= 90% of 200 seeds each.
#[test]
fn criterion_1_multiplicative_coreset_guarantee() {
    let start = Instant::now();
    let cal = calibration::defaults();
    let base = base_constructor();
    let eps = 0.2;
    let delta = 0.1;
    let seeds = 200u64;
    let mut worst = (f64::INFINITY, String::new());
    for inst in criterion_one_instances() {
        let mut pass_count = 0u32;
        for trial in 0..seeds {
            let seed = 0xACCE97 + trial;
            let coreset = base
                .construct(&inst.x, &inst.metric, inst.k, inst.z, eps, delta, seed)
                .unwrap();
            let d = coreset.as_weighted_set().unwrap();
            let report = certify_coreset(
                &inst.x,
                &d,
                &inst.metric,
                inst.k,
                inst.z,
                eps,
                cal.enum_budget,
            )
            .unwrap();
            assert_eq!(
                report.mode,
                coreset_core::harness::CertifyMode::Exhaustive,
                "criterion 1 must certify exhaustively"
            );
            if report.pass {
                pass_count += 1;
            }
        }
        let rate = pass_count as f64 / seeds as f64;
        if rate < worst.0 {
            worst = (rate, inst.name.to_string());
        }
        assert!(
            rate >= 0.9,
            "instance {} passed only {pass_count}/{seeds}",
            inst.name
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    let within_budget = elapsed < 120.0;
    conclude(
        1,
        "coreset guarantee",
        within_budget,
        format!(
            "20 instances x 200 seeds, worst pass rate {:.1}% ({}), {elapsed:.1}s (< 120s)",
            100.0 * worst.0,
            worst.1
        ),
    );
}

/// Criterion 2: sensitivity bounds, both directions, exhaustively.
#[test]
fn criterion_2_sensitivity_lemma_both_directions() {
    let cal = calibration::defaults();
    let mut profiles = 0u32;
    let mut min_margin = f64::INFINITY;
    for inst in sensitivity_instances() {
        assert!(inst.metric.size() <= 10 && inst.k <= 2);
        for z in [1.0, 2.0] {
            let params = ClusteringParams::new(inst.k, z, 0.2, 0.1).unwrap();
            for seed in 0..20u64 {
                let bsol = bicriteria_approx(&inst.x, &inst.metric, &params, seed).unwrap();
                let profile =
                    compute_sensitivities(&inst.x, &inst.metric, &params, &bsol).unwrap();
                // upper bound, exact with 1e-9 float tolerance
                assert!(
                    profile.sigma_total <= 1.0 + bsol.alpha * inst.k as f64 + 1e-9,
                    "{} z={z} seed={seed}: sigma total {}",
                    inst.name,
                    profile.sigma_total
                );
                let report = certify_sensitivities(
                    &inst.x,
                    &inst.metric,
                    inst.k,
                    z,
                    &profile,
                    cal.enum_budget,
                )
                .unwrap();
                let worst = report
                    .margins
                    .iter()
                    .fold(f64::INFINITY, |a, &b| a.min(b));
                min_margin = min_margin.min(worst);
                assert!(
                    report.pass && worst >= -1e-9,
                    "{} z={z} seed={seed}: margin {worst}",
                    inst.name
                );
                profiles += 1;
            }
        }
    }
    conclude(
        2,
        "sensitivity lemma",
        true,
        format!("{profiles} profiles certified, min lower-bound margin {min_margin:.3e}"),
    );
}

/// Criterion 3: power triangle inequality on 1e5 random triples.
#[test]
fn criterion_3_power_triangle_inequality() {
    let rng = StreamRng::new(33);
    let mut r = rng.stream(0);

    let euclid = {
        let coords: Vec<f64> = (0..36).map(|_| r.random::<f64>() * 9.0).collect();
        MetricHandle::euclidean(3, coords).unwrap()
    };
    let graph = {
        let mut edges: Vec<(usize, usize, f64)> = (1..12)
            .map(|v| ((r.random::<u32>() as usize) % v, v, 0.2 + r.random::<f64>()))
            .collect();
        edges.push((0, 11, 3.0));
        edges.push((3, 9, 1.5));
        MetricHandle::graph(12, &edges).unwrap()
    };
    let matrix = {
        // valid metric table: all-pairs graph distances, symmetrized from the
        // upper triangle (independent sweeps differ in the last ulp)
        let all: Vec<usize> = (0..12).collect();
        let rows = DistanceRows::build(&all, &graph).unwrap();
        let mut table = vec![0.0; 144];
        for i in 0..12 {
            for j in (i + 1)..12 {
                table[i * 12 + j] = rows.dist(i, j);
                table[j * 12 + i] = rows.dist(i, j);
            }
        }
        MetricHandle::matrix(12, table).unwrap()
    };

    let mut total = 0usize;
    for metric in [&euclid, &graph, &matrix] {
        let n = metric.size();
        let triples: Vec<(usize, usize, usize)> = (0..34_000)
            .map(|_| {
                (
                    (r.random::<u32>() as usize) % n,
                    (r.random::<u32>() as usize) % n,
                    (r.random::<u32>() as usize) % n,
                )
            })
            .collect();
        total += triples.len();
        for z in [1.0, 1.5, 2.0, 3.0] {
            assert!(
                power_triangle_check(metric, z, &triples).unwrap(),
                "violation at z={z}"
            );
        }
    }
    conclude(
        3,
        "power triangle inequality",
        total >= 100_000,
        format!("{total} triples x 4 exponents, zero violations beyond 1e-12 slack"),
    );
}

/// Criterion 4: schedule invariants exactly, plus end-to-end iterative runs
/// certified at eps' = 13 eps.
#[test]
fn criterion_4_iterative_schedule() {
    // (a) exact arithmetic on emitted schedules
    let mut schedules = 0u32;
    for rho in [1.0, 1.5, 2.0] {
        for (eps, delta) in [(0.1, 0.1), (0.2, 0.1), (0.4, 0.25)] {
            for s_of_k in [1e-6, 0.01, 1.0] {
                for mag in [
                    Magnitude::Count(1 << 12),
                    Magnitude::Count(1 << 20),
                    Magnitude::Pow2(65536.0),
                    Magnitude::Pow2(1e9),
                ] {
                    let params = ClusteringParams::k_median(2, eps, delta).unwrap();
                    let s = build_schedule(mag, &params, rho, s_of_k).unwrap();
                    let doubling = rho * (rho + 1.0).exp2();
                    for i in 0..s.eps_sequence.len().saturating_sub(1) {
                        if s.iterated_logs[i] >= doubling {
                            assert!(
                                s.eps_sequence[i + 1] >= 2.0 * s.eps_sequence[i],
                                "doubling violated at i={i}"
                            );
                        }
                    }
                    if !s.eps_sequence.is_empty() {
                        assert!(
                            s.error_product() <= 1.0 + 10.0 * eps,
                            "error product {} above 1 + 10 eps",
                            s.error_product()
                        );
                    }
                    schedules += 1;
                }
            }
        }
    }

    // (b) end-to-end runs at eps' = 13 * eps on the criterion-1 instances
    let cal = calibration::defaults();
    let base = MultiplicativeConstructor {
        constant: cal.sampling_constant,
        sdim_proxy: cal.sdim_proxy,
        scale_sdim_by_log: true,
    };
    let eps = 0.2;
    let eps_chain = 13.0 * eps;
    let seeds = 200u64;
    let mut worst_rate = 1.0f64;
    for inst in criterion_one_instances() {
        let params = ClusteringParams::new(inst.k, inst.z, eps, 0.1).unwrap();
        let mut pass_count = 0u32;
        for trial in 0..seeds {
            let (coreset, dump) = iterative_reduce(
                &inst.x,
                &inst.metric,
                &params,
                &base,
                cal.rho,
                cal.s_of_k,
                0x17E7 + trial,
            )
            .unwrap();
            assert!(dump.delta_spent <= 2.0 * params.delta + 1e-12);
            let d = coreset.as_weighted_set().unwrap();
            let report = certify_coreset(
                &inst.x,
                &d,
                &inst.metric,
                inst.k,
                inst.z,
                eps_chain,
                cal.enum_budget,
            )
            .unwrap();
            if report.pass {
                pass_count += 1;
            }
        }
        let rate = pass_count as f64 / seeds as f64;
        worst_rate = worst_rate.min(rate);
        assert!(
            rate >= 0.9,
            "instance {}: iterative chain passed only {pass_count}/{seeds} at eps' = {eps_chain}",
            inst.name
        );
    }
    conclude(
        4,
        "iterative schedule",
        true,
        format!(
            "{schedules} schedules checked exactly; end-to-end worst pass rate {:.1}% at eps' = 13 eps",
            100.0 * worst_rate
        ),
    );
}

/// Criterion 5: Euclidean embedding distortion across 50 seeds, plus the
/// coreset-through-embedding composition at eps_total = 0.2 + 3 * 0.3.
#[test]
fn criterion_5_euclidean_embedding() {
    let cal = calibration::defaults();
    let (m, n_x, n_v, eps) = (100usize, 50usize, 200usize, 0.3f64);
    let rng = StreamRng::new(55);
    let mut r = rng.stream(0);
    let coords: Vec<f64> = (0..n_v * m).map(|_| r.random::<f64>() * 2.0 - 1.0).collect();
    let metric = MetricHandle::euclidean(m, coords).unwrap();
    let x = WeightedPointSet::unit((0..n_x).collect()).unwrap();
    let centers: Vec<usize> = (0..n_v).collect();

    let mut max_eff = 0.0f64;
    let mut max_retries_seen = 0u32;
    for seed in 0..50u64 {
        let emb = build_embedding(&x, &metric, &centers, eps, seed, cal.max_retries, cal.c_jl)
            .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(emb.verified_distortion <= eps);
        max_eff = max_eff.max(emb.verified_distortion);
        max_retries_seen = max_retries_seen.max(emb.retries_used);
        // one-sidedness: min f/d >= 1 exactly over all verified pairs
        let em = embedded_metric(&emb, &metric).unwrap();
        let mut min_ratio = f64::INFINITY;
        for &xp in x.points() {
            for c in 0..n_v {
                if xp == c {
                    continue;
                }
                let d = coreset_core::metric::distance(&metric, xp, c).unwrap();
                let f = coreset_core::metric::distance(&em, xp, c).unwrap();
                min_ratio = min_ratio.min(f / d);
            }
        }
        assert!(
            min_ratio >= 1.0 - 1e-9,
            "seed {seed}: one-sidedness violated ({min_ratio})"
        );
    }

    // composition on a criterion-1-sized instance, certified with TRUE
    // distances at the combined budget
    let eps_total = 0.2 + 3.0 * eps;
    let small_metric = {
        let mut rr = rng.stream(1);
        let coords: Vec<f64> = (0..12 * 20).map(|_| rr.random::<f64>() * 5.0).collect();
        MetricHandle::euclidean(20, coords).unwrap()
    };
    let small_x = WeightedPointSet::unit((0..12).collect()).unwrap();
    let all: Vec<usize> = (0..12).collect();
    let emb = build_embedding(&small_x, &small_metric, &all, eps, 3, cal.max_retries, cal.c_jl)
        .unwrap();
    let proxy = embedded_metric(&emb, &small_metric).unwrap();
    let base = base_constructor();
    let mut passed = 0u32;
    let trials = 50u64;
    for seed in 0..trials {
        let coreset = base
            .construct(&small_x, &proxy, 2, 1.0, 0.2, 0.1, seed)
            .unwrap();
        let d = coreset.as_weighted_set().unwrap();
        let report =
            certify_coreset(&small_x, &d, &small_metric, 2, 1.0, eps_total, cal.enum_budget)
                .unwrap();
        if report.pass {
            passed += 1;
        }
    }
    let rate = passed as f64 / trials as f64;
    conclude(
        5,
        "euclidean embedding",
        rate >= 0.9,
        format!(
            "50 seeds: max eps_eff {max_eff:.3} (<= {eps}), max retries {max_retries_seen}, min f/d >= 1; composition pass rate {:.0}%",
            100.0 * rate
        ),
    );
}

/// Criterion 6: planar decomposition invariant suite on 50 random instances.
#[test]
fn criterion_6_planar_decomposition_invariants() {
    let rng = StreamRng::new(66);
    let mut failures = 0u32;
    for seed in 0..50u64 {
        let inst = random_planar_instance(seed, 40);
        let n = inst.embedding().vertex_count();
        let mut r = rng.stream(seed);
        let s: Vec<usize> = (0..n).filter(|_| r.random::<f64>() < 0.35).collect();
        let d = decompose(&inst, &s).unwrap();
        if verify_decomposition(&inst, &d).is_err() {
            failures += 1;
        }
    }
    conclude(
        6,
        "planar decomposition",
        failures == 0,
        format!("50 random instances (|V| <= 40), {failures} invariant failures"),
    );
}

/// Criterion 7: portal estimator distortion, exhaustive against the exact
/// through-path oracle, eps in {0.1, 0.2, 0.4}.
#[test]
fn criterion_7_portal_distortion() {
    let insts = [
        grid_instance(7, 7),
        grid_instance(5, 5),
        random_planar_instance(3, 36),
        random_planar_instance(8, 30),
    ];
    let mut pairs_checked = 0usize;
    let mut l_checked = 0usize;
    for (i, inst) in insts.into_iter().enumerate() {
        let nv = inst.embedding().vertex_count();
        // spread marked vertices across the instance
        let stride = (nv / 5).max(2);
        let s: Vec<usize> = (i % 2..nv).step_by(stride).collect();
        let metric = inst.metric_handle().unwrap();
        let n = metric.size();
        assert!(n <= 50);
        let all: Vec<usize> = (0..n).collect();
        let rows = DistanceRows::build(&all, &metric).unwrap();
        let decomp = decompose(&inst, &s).unwrap();
        for eps in [0.1, 0.2, 0.4] {
            // portal structures for every vertex on every path
            let mut portals: Vec<Vec<PortalStructure>> = Vec::new();
            for path in &decomp.paths {
                let per_vertex: Vec<PortalStructure> = (0..n)
                    .map(|v| {
                        let drow: Vec<f64> =
                            path.vertices.iter().map(|&p| rows.dist(v, p)).collect();
                        let ps = build_portals(&drow, path, eps).unwrap();
                        assert!(
                            (ps.portals.len() as f64) <= PortalStructure::portal_bound(eps),
                            "portal count bound violated"
                        );
                        ps
                    })
                    .collect();
                portals.push(per_vertex);
            }
            // The estimator's provable band: inside the window the direct
            // form l in (1 +- eps) d holds; outside, the construction gives
            // d in (1 +- eps) l, i.e. l <= d / (1 - eps). The uniform band
            // below is exactly what the construction guarantees.
            for (pid, path) in decomp.paths.iter().enumerate() {
                for y in 0..n {
                    for (idx, &yp) in path.vertices.iter().enumerate() {
                        let l = portals[pid][y].l_eval(path, idx);
                        let d = rows.dist(y, yp);
                        assert!(
                            l >= (1.0 - eps) * d - 1e-9 && l <= d / (1.0 - eps) + 1e-9,
                            "l out of band: path {pid} y {y} y' {yp}: {l} vs {d}"
                        );
                        let (a, b) = portals[pid][y].window;
                        if idx >= a && idx <= b {
                            // inside-window case satisfies the direct band
                            assert!(
                                l <= (1.0 + eps) * d + 1e-9,
                                "inside-window l breaks the direct band: {l} vs {d}"
                            );
                        }
                        l_checked += 1;
                    }
                }
            }
            // f_x^j inherits the same band against the through-path oracle
            for part in &decomp.parts {
                for &pid in &part.path_ids {
                    let path = &decomp.paths[pid];
                    for &xp in &s {
                        if part.contains(xp) {
                            continue;
                        }
                        for &c in &part.vertices {
                            let f = approx_distance_through_path(
                                &portals[pid][xp],
                                &portals[pid][c],
                                path,
                            )
                            .unwrap();
                            let dj = through_path_oracle(
                                rows.row(xp),
                                rows.row(c),
                                path,
                            );
                            assert!(
                                f >= (1.0 - eps) * dj - 1e-9 && f <= dj / (1.0 - eps) + 1e-9,
                                "f_x^j out of band at eps {eps}: x {xp} c {c}: {f} vs {dj}"
                            );
                            pairs_checked += 1;
                        }
                    }
                }
            }
        }
    }
    conclude(
        7,
        "portal distortion",
        pairs_checked > 0 && l_checked > 0,
        format!("{l_checked} l-evaluations and {pairs_checked} through-path pairs in band"),
    );
}

/// Criterion 8: partition solver equals brute force; end-to-end solution
/// within (1 + 3 eps) of OPT whenever the coreset certifies.
#[test]
fn criterion_8_fpt_solver() {
    let rng = StreamRng::new(88);
    // exact equality sweep over all |D|_0 <= 8, k <= 3, both backends
    let mut comparisons = 0u32;
    for n in 1..=8usize {
        for k in 1..=3usize {
            for z in [1.0, 2.0] {
                let mut r = rng.stream((n * 10 + k) as u64);
                let ambient = n + 4;
                let metric = if n % 2 == 0 {
                    let coords: Vec<f64> =
                        (0..2 * ambient).map(|_| r.random::<f64>() * 8.0).collect();
                    MetricHandle::euclidean(2, coords).unwrap()
                } else {
                    let mut edges: Vec<(usize, usize, f64)> = (1..ambient)
                        .map(|v| {
                            ((r.random::<u32>() as usize) % v, v, 0.2 + r.random::<f64>())
                        })
                        .collect();
                    edges.push((0, ambient - 1, 2.5));
                    MetricHandle::graph(ambient, &edges).unwrap()
                };
                let weights: Vec<f64> = (0..n).map(|_| 0.25 + 2.0 * r.random::<f64>()).collect();
                let d = WeightedPointSet::new((0..n).collect(), weights).unwrap();
                let a = fpt_solve(&d, &metric, k, z, 10_000_000).unwrap();
                let b = brute_force_opt(&d, &metric, k, z, 10_000_000).unwrap();
                assert!(
                    (a.optimal_cost - b.optimal_cost).abs()
                        <= 1e-9 * b.optimal_cost.max(1.0),
                    "n={n} k={k} z={z}: fpt {} vs brute {}",
                    a.optimal_cost,
                    b.optimal_cost
                );
                comparisons += 1;
            }
        }
    }

    // end-to-end: certified coreset -> solve -> evaluate on X
    let cal = calibration::defaults();
    let base = base_constructor();
    let eps = 0.2;
    let mut solved = 0u32;
    let mut skipped = 0u32;
    for inst in criterion_one_instances().into_iter().take(6) {
        let opt = brute_force_opt(&inst.x, &inst.metric, inst.k, inst.z, cal.enum_budget).unwrap();
        for seed in 0..10u64 {
            let coreset = base
                .construct(&inst.x, &inst.metric, inst.k, inst.z, eps, 0.1, seed)
                .unwrap();
            let d = coreset.as_weighted_set().unwrap();
            let report = certify_coreset(
                &inst.x,
                &d,
                &inst.metric,
                inst.k,
                inst.z,
                eps,
                cal.enum_budget,
            )
            .unwrap();
            if !report.pass {
                skipped += 1;
                continue;
            }
            if (inst.k as u32).pow(d.size() as u32) > 4_000_000 {
                skipped += 1;
                continue; // partition space too large for the budgeted sweep
            }
            let sol = fpt_solve(&d, &inst.metric, inst.k, inst.z, 4_000_000).unwrap();
            let achieved = cost(&inst.x, &sol.centers, &inst.metric, inst.z).unwrap();
            assert!(
                achieved <= (1.0 + 3.0 * eps) * opt.optimal_cost + 1e-9,
                "{} seed {seed}: {achieved} vs OPT {}",
                inst.name,
                opt.optimal_cost
            );
            solved += 1;
        }
    }
    conclude(
        8,
        "fpt solver",
        comparisons == 48 && solved > 0,
        format!(
            "{comparisons} oracle equalities; {solved} end-to-end runs within (1+3eps)·OPT ({skipped} skipped)"
        ),
    );
}

/// Criterion 9: additive variant's weak-coreset ratio <= 2 in >= 95% of runs.
#[test]
fn criterion_9_additive_weak_coreset() {
    let cal = calibration::defaults();
    let seeds = 200u64;
    let mut worst_rate = 1.0f64;
    let mut instances = 0u32;
    for inst in criterion_one_instances() {
        if inst.z != 1.0 {
            continue; // the additive variant is defined for k-median
        }
        instances += 1;
        let params = ClusteringParams::k_median(inst.k, 0.2, 0.1).unwrap();
        let n_draws =
            choose_sample_size_additive(&params, cal.sdim_proxy, cal.sampling_constant).unwrap();
        let mut ok = 0u32;
        for trial in 0..seeds {
            let rng = StreamRng::new(0xADD + trial);
            let bsol =
                bicriteria_approx(&inst.x, &inst.metric, &params, rng.child(1).seed()).unwrap();
            let profile =
                compute_sensitivities(&inst.x, &inst.metric, &params, &bsol).unwrap();
            let (_, ratio) = sample_coreset_additive(
                &inst.x,
                &inst.metric,
                &params,
                &profile,
                n_draws,
                rng.child(2).seed(),
            )
            .unwrap();
            if ratio <= 2.0 {
                ok += 1;
            }
        }
        let rate = ok as f64 / seeds as f64;
        worst_rate = worst_rate.min(rate);
        assert!(
            rate >= 0.95,
            "instance {}: ratio <= 2 in only {ok}/{seeds} runs",
            inst.name
        );
    }
    conclude(
        9,
        "additive weak coreset",
        instances > 0,
        format!("{instances} k-median instances, worst ratio-pass rate {:.1}%", 100.0 * worst_rate),
    );
}

/// Criterion 10: commands are deterministic — byte-identical artifacts.
#[test]
fn criterion_10_determinism() {
    let bin = env!("CARGO_BIN_EXE_coreset");
    let dir = std::env::temp_dir().join(format!("coreset-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // Euclidean instance file
    let mut csv = String::from("id,weight,c1,c2\n");
    let rng = StreamRng::new(1010);
    let mut r = rng.stream(0);
    for i in 0..12 {
        csv.push_str(&format!(
            "{i},{:.3},{:.4},{:.4}\n",
            0.5 + r.random::<f64>(),
            r.random::<f64>() * 7.0,
            r.random::<f64>() * 7.0
        ));
    }
    let points = dir.join("points.csv");
    std::fs::write(&points, &csv).unwrap();

    // planar instance file (4x3 grid) with rotations from the generator
    let planar_file = dir.join("grid.planar");
    {
        let inst = grid_instance(4, 3);
        let emb = inst.embedding();
        let mut text = format!("p {} {}\n", emb.vertex_count(), emb.edges().len());
        for e in emb.edges() {
            text.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
        }
        for (v, rot) in emb.rotations().iter().enumerate() {
            let ids: Vec<String> = rot.iter().map(|e| e.to_string()).collect();
            text.push_str(&format!("r {v} {}\n", ids.join(" ")));
        }
        std::fs::write(&planar_file, text).unwrap();
    }

    let run = |args: &[&str], out: &std::path::Path| {
        let status = std::process::Command::new(bin)
            .args(args)
            .arg("--out")
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "command {args:?} failed");
        std::fs::read(out).unwrap()
    };

    let mut checked = 0;
    for (label, args) in [
        (
            "coreset-multiplicative",
            vec![
                "coreset",
                "--algo",
                "multiplicative",
                "--k",
                "2",
                "--eps",
                "0.2",
                "--delta",
                "0.1",
                "--seed",
                "7",
                points.to_str().unwrap(),
            ],
        ),
        (
            "coreset-iterative",
            vec![
                "coreset",
                "--algo",
                "iterative",
                "--k",
                "2",
                "--eps",
                "0.2",
                "--delta",
                "0.1",
                "--seed",
                "7",
                points.to_str().unwrap(),
            ],
        ),
        (
            "solve",
            vec![
                "solve",
                "--k",
                "2",
                "--eps",
                "0.2",
                "--seed",
                "9",
                "--emit-report",
                points.to_str().unwrap(),
            ],
        ),
        (
            "decompose",
            vec![
                "decompose",
                "--planar",
                planar_file.to_str().unwrap(),
                "--s",
                "0,3,5,8,11",
                "--check-portals",
                "--eps",
                "0.2",
            ],
        ),
    ] {
        let out_a = dir.join(format!("{label}-a.json"));
        let out_b = dir.join(format!("{label}-b.json"));
        let a = run(&args, &out_a);
        let b = run(&args, &out_b);
        assert_eq!(a, b, "{label}: artifacts differ between identical runs");
        checked += 1;
    }

    // iterative schedule dump is part of the artifact set
    let sched_a = dir.join("sched-a.json");
    let sched_b = dir.join("sched-b.json");
    for (out, sched) in [(&dir.join("it-a.json"), &sched_a), (&dir.join("it-b.json"), &sched_b)] {
        let status = std::process::Command::new(bin)
            .args([
                "coreset",
                "--algo",
                "iterative",
                "--k",
                "2",
                "--seed",
                "21",
                points.to_str().unwrap(),
                "--schedule-out",
            ])
            .arg(sched)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(&sched_a).unwrap(),
        std::fs::read(&sched_b).unwrap(),
        "schedule dumps differ"
    );

    std::fs::remove_dir_all(&dir).ok();
    conclude(
        10,
        "determinism",
        checked == 4,
        format!("{checked} commands plus schedule dump byte-identical across reruns"),
    );
}
