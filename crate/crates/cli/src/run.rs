//! Command implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use coreset_core::error::{Error, Result};
use coreset_core::harness::certify_coreset;
use coreset_core::io as cio;
use coreset_core::metric::{MetricHandle, WeightedPointSet};
use coreset_core::planar::{
    decompose, verify_decomposition, SeparatorMetric,
};
use coreset_core::reduce::{
    iterative_reduce, CoresetConstructor, MultiplicativeConstructor, ScheduleDump,
};
use coreset_core::rng::StreamRng;
use coreset_core::sensitivity::{
    choose_sample_size_additive, compute_sensitivities, sample_coreset_additive, Coreset,
};
use coreset_core::solvers::{bicriteria_approx, fpt_solve};

use crate::config::{resolve, Resolved};
use crate::{CertifyArgs, CoresetArgs, DecomposeArgs, InputArgs, SolveArgs};

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn init_workers(workers: usize) {
    #[cfg(feature = "parallel")]
    {
        // default single-threaded for reproducible timing baselines
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

struct Instance {
    metric: MetricHandle,
    x: WeightedPointSet,
}

fn load_instance(input: &InputArgs) -> Result<Instance> {
    let read = |p: &Path| -> Result<String> { Ok(std::fs::read_to_string(p)?) };
    if let Some(planar_path) = &input.planar {
        let inst = cio::parse_planar(&read(planar_path)?)?;
        let metric = inst.metric_handle()?;
        let points_path = input.points.as_ref().ok_or_else(|| {
            Error::InvalidParameter("a point-set CSV is required with --planar".into())
        })?;
        let x = cio::parse_graph_points_csv(&read(points_path)?, metric.size())?;
        Ok(Instance { metric, x })
    } else if let Some(graph_path) = &input.graph {
        let metric = cio::parse_graph(&read(graph_path)?)?;
        let points_path = input.points.as_ref().ok_or_else(|| {
            Error::InvalidParameter("a point-set CSV is required with --graph".into())
        })?;
        let x = cio::parse_graph_points_csv(&read(points_path)?, metric.size())?;
        Ok(Instance { metric, x })
    } else {
        let points_path = input.points.as_ref().ok_or_else(|| {
            Error::InvalidParameter("a point-set CSV is required".into())
        })?;
        let (metric, x) = cio::parse_euclidean_csv(&read(points_path)?)?;
        Ok(Instance { metric, x })
    }
}

fn build_coreset(
    algo: &str,
    metric: &MetricHandle,
    x: &WeightedPointSet,
    cfg: &Resolved,
    seed: u64,
) -> Result<(Coreset, Option<ScheduleDump>)> {
    let params = cfg.params()?;
    match algo {
        "multiplicative" => {
            let base = MultiplicativeConstructor {
                constant: cfg.constant,
                sdim_proxy: cfg.sdim_proxy,
                scale_sdim_by_log: false,
            };
            let coreset = base.construct(
                x,
                metric,
                params.k,
                params.z,
                params.epsilon,
                params.delta,
                seed,
            )?;
            Ok((coreset, None))
        }
        "additive" => {
            let rng = StreamRng::new(seed);
            let base = bicriteria_approx(x, metric, &params, rng.child(1).seed())?;
            let profile = compute_sensitivities(x, metric, &params, &base)?;
            let n = choose_sample_size_additive(&params, cfg.sdim_proxy, cfg.constant)?;
            let (coreset, _ratio) =
                sample_coreset_additive(x, metric, &params, &profile, n, rng.child(2).seed())?;
            Ok((coreset, None))
        }
        "iterative" => {
            let base = MultiplicativeConstructor {
                constant: cfg.constant,
                sdim_proxy: cfg.sdim_proxy,
                scale_sdim_by_log: true,
            };
            let (coreset, dump) =
                iterative_reduce(x, metric, &params, &base, cfg.rho, cfg.s_of_k, seed)?;
            Ok((coreset, Some(dump)))
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown algorithm {other:?}; expected multiplicative, additive, or iterative"
        ))),
    }
}

pub fn cmd_coreset(args: CoresetArgs) -> Result<u8> {
    let cfg = resolve(&args.params)?;
    init_workers(cfg.workers);
    let inst = load_instance(&args.input)?;
    let (coreset, dump) = build_coreset(&args.algo, &inst.metric, &inst.x, &cfg, cfg.seed)?;
    if let Some(dump) = dump {
        let text = cio::schedule_to_json(&dump);
        match &args.schedule_out {
            Some(p) => std::fs::write(p, text)?,
            None => {
                if let Some(out) = &args.out {
                    let p = out.with_extension("schedule.json");
                    std::fs::write(p, text)?;
                }
            }
        }
    }
    write_out(&args.out, &cio::coreset_to_json(&coreset))?;
    Ok(0)
}

fn parse_seed_range(spec: &str) -> Result<std::ops::Range<u64>> {
    let (a, b) = spec.split_once("..").ok_or_else(|| {
        Error::InvalidParameter(format!("seed range must be start..end, got {spec:?}"))
    })?;
    let start: u64 = a.trim().parse().map_err(|_| {
        Error::InvalidParameter(format!("bad seed range start {a:?}"))
    })?;
    let end: u64 = b.trim().parse().map_err(|_| {
        Error::InvalidParameter(format!("bad seed range end {b:?}"))
    })?;
    if end <= start {
        return Err(Error::InvalidParameter("empty seed range".into()));
    }
    Ok(start..end)
}

pub fn cmd_certify(args: CertifyArgs) -> Result<u8> {
    let cfg = resolve(&args.params)?;
    init_workers(cfg.workers);
    let inst = load_instance(&args.input)?;

    if let Some(range) = &args.seeds {
        let range = parse_seed_range(range)?;
        let mut rows = vec![cio::report_csv_header().to_string()];
        let mut reports = Vec::new();
        let mut passes = 0usize;
        let total = (range.end - range.start) as usize;
        for seed in range {
            let (coreset, _) = build_coreset(&args.algo, &inst.metric, &inst.x, &cfg, seed)?;
            let d = coreset.as_weighted_set()?;
            let report = certify_coreset(
                &inst.x,
                &d,
                &inst.metric,
                cfg.k,
                cfg.z,
                cfg.eps,
                cfg.budget,
            )?;
            if report.pass {
                passes += 1;
            }
            rows.push(cio::report_csv_row(seed, &report));
            reports.push(report);
        }
        let text = match args.format.as_str() {
            "csv" => rows.join("\n") + "\n",
            "json" => serde_json::to_string_pretty(&reports).expect("reports serialize"),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown format {other:?}"
                )))
            }
        };
        write_out(&args.out, &text)?;
        let rate = passes as f64 / total as f64;
        return Ok(if rate >= args.pass_rate { 0 } else { 1 });
    }

    let coreset_path = args.coreset.as_ref().ok_or_else(|| {
        Error::InvalidParameter("need --coreset (or --seeds for batch mode)".into())
    })?;
    let coreset = cio::coreset_from_json(&std::fs::read_to_string(coreset_path)?)?;
    coreset.check_subset_of(&inst.x)?;
    let d = coreset.as_weighted_set()?;
    let report = certify_coreset(
        &inst.x,
        &d,
        &inst.metric,
        cfg.k,
        cfg.z,
        cfg.eps,
        cfg.budget,
    )?;
    let text = match args.format.as_str() {
        "csv" => format!(
            "{}\n{}\n",
            cio::report_csv_header(),
            cio::report_csv_row(cfg.seed, &report)
        ),
        _ => cio::report_to_json(&report),
    };
    write_out(&args.out, &text)?;
    Ok(if report.pass { 0 } else { 1 })
}

pub fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let cfg = resolve(&args.params)?;
    init_workers(cfg.workers);
    let inst = load_instance(&args.input)?;

    let coreset = match &args.coreset {
        Some(path) => cio::coreset_from_json(&std::fs::read_to_string(path)?)?,
        None => build_coreset(&args.algo, &inst.metric, &inst.x, &cfg, cfg.seed)?.0,
    };
    coreset.check_subset_of(&inst.x)?;
    let d = coreset.as_weighted_set()?;
    let solution = fpt_solve(&d, &inst.metric, cfg.k, cfg.z, cfg.budget)?;
    // evaluate the returned centers against the full instance, true distances
    let cost_on_x =
        coreset_core::metric::cost(&inst.x, &solution.centers, &inst.metric, cfg.z)?;
    let doc = cio::SolutionJson {
        centers: solution.centers.centers().to_vec(),
        cost: cost_on_x,
        k: cfg.k,
        z: cfg.z,
        method: format!("fpt+{}", args.algo),
        seed: Some(cfg.seed),
    };
    let mut text = cio::solution_to_json(&doc);
    if args.emit_report {
        let report = certify_coreset(
            &inst.x,
            &d,
            &inst.metric,
            cfg.k,
            cfg.z,
            cfg.eps,
            cfg.budget,
        )?;
        let combined = serde_json::json!({
            "solution": serde_json::from_str::<serde_json::Value>(&text).expect("valid json"),
            "report": serde_json::from_str::<serde_json::Value>(&cio::report_to_json(&report))
                .expect("valid json"),
        });
        text = serde_json::to_string_pretty(&combined).expect("combined serializes");
    }
    write_out(&args.out, &text)?;
    Ok(0)
}

#[derive(serde::Serialize)]
struct PortalSweep {
    pairs_checked: usize,
    min_f_over_d: f64,
    max_f_over_d: f64,
    bound: f64,
    pass: bool,
}

pub fn cmd_decompose(args: DecomposeArgs) -> Result<u8> {
    let cfg = resolve(&args.params)?;
    init_workers(cfg.workers);
    let planar_path = args.input.planar.as_ref().ok_or_else(|| {
        Error::InvalidParameter("decompose requires --planar".into())
    })?;
    let inst = cio::parse_planar(&std::fs::read_to_string(planar_path)?)?;
    let metric = inst.metric_handle()?;

    let s: Vec<usize> = match &args.s {
        Some(spec) => spec
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("bad vertex id {t:?} in --s"))
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => {
            let points_path = args.input.points.as_ref().ok_or_else(|| {
                Error::InvalidParameter("need --s or a point-set CSV".into())
            })?;
            let x = cio::parse_graph_points_csv(
                &std::fs::read_to_string(points_path)?,
                metric.size(),
            )?;
            x.points().to_vec()
        }
    };

    let decomposition = decompose(&inst, &s)?;
    if let Err(e) = verify_decomposition(&inst, &decomposition) {
        eprintln!("invariant suite failed: {e}");
        return Ok(1);
    }

    let mut text = cio::decomposition_to_json(&decomposition);
    let mut pass = true;
    if args.check_portals {
        let x = WeightedPointSet::unit({
            let mut ss = s.clone();
            ss.sort_unstable();
            ss.dedup();
            ss
        })?;
        let sm = SeparatorMetric::build(&metric, &decomposition, &x, cfg.eps)?;
        let mut min_ratio = f64::INFINITY;
        let mut max_ratio: f64 = 0.0;
        let mut pairs = 0usize;
        for &xp in x.points() {
            for c in 0..metric.size() {
                if xp == c {
                    continue;
                }
                let f = sm.eval(xp, c);
                let d = sm.true_distance(xp, c);
                min_ratio = min_ratio.min(f / d);
                max_ratio = max_ratio.max(f / d);
                pairs += 1;
            }
        }
        let bound = 1.0 / ((1.0 - cfg.eps) * (1.0 - cfg.eps));
        pass = min_ratio >= 1.0 - 1e-9 && max_ratio <= bound + 1e-9;
        let sweep = PortalSweep {
            pairs_checked: pairs,
            min_f_over_d: min_ratio,
            max_f_over_d: max_ratio,
            bound,
            pass,
        };
        let combined = serde_json::json!({
            "decomposition": serde_json::from_str::<serde_json::Value>(&text)
                .expect("valid json"),
            "portal_sweep": sweep,
        });
        text = serde_json::to_string_pretty(&combined).expect("combined serializes");
    }
    write_out(&args.out, &text)?;
    Ok(if pass { 0 } else { 1 })
}
