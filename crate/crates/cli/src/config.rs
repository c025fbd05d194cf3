//! Config resolution: flags override config-file keys, which override the
//! calibrated defaults. Unknown config keys are rejected.

use std::path::Path;

use serde::Deserialize;

use coreset_core::calibration;
use coreset_core::error::{Error, Result};
use coreset_core::metric::ClusteringParams;

#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub k: Option<usize>,
    pub z: Option<f64>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub rho: Option<f64>,
    pub s_of_k: Option<f64>,
    pub sdim_proxy: Option<f64>,
    pub constant: Option<f64>,
    pub budget: Option<u64>,
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct Resolved {
    pub k: usize,
    pub z: f64,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    pub rho: f64,
    pub s_of_k: f64,
    pub sdim_proxy: f64,
    pub constant: f64,
    pub budget: u64,
    pub workers: usize,
}

impl Resolved {
    pub fn params(&self) -> Result<ClusteringParams> {
        ClusteringParams::new(self.k, self.z, self.eps, self.delta)
    }
}

pub fn resolve(args: &crate::ParamArgs) -> Result<Resolved> {
    let file: FileConfig = match &args.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };
    let cal = calibration::defaults();
    let env_budget = std::env::var("CORESET_ENUM_BUDGET")
        .ok()
        .map(|v| {
            v.parse::<u64>().map_err(|_| {
                Error::InvalidParameter(format!("CORESET_ENUM_BUDGET must be an integer, got {v}"))
            })
        })
        .transpose()?;

    let resolved = Resolved {
        k: args.k.or(file.k).unwrap_or(1),
        z: args.z.or(file.z).unwrap_or(1.0),
        eps: args.eps.or(file.eps).unwrap_or(0.2),
        delta: args.delta.or(file.delta).unwrap_or(0.1),
        seed: args.seed.or(file.seed).unwrap_or(0),
        rho: args.rho.or(file.rho).unwrap_or(cal.rho),
        s_of_k: args.s_of_k.or(file.s_of_k).unwrap_or(cal.s_of_k),
        sdim_proxy: args.sdim_proxy.or(file.sdim_proxy).unwrap_or(cal.sdim_proxy),
        constant: args.constant.or(file.constant).unwrap_or(cal.sampling_constant),
        budget: args
            .budget
            .or(env_budget)
            .or(file.budget)
            .unwrap_or(cal.enum_budget),
        workers: args.workers.or(file.workers).unwrap_or(1),
    };
    resolved.params()?; // range validation up front
    if resolved.rho < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "rho must be >= 1, got {}",
            resolved.rho
        )));
    }
    if !(resolved.s_of_k > 0.0 && resolved.sdim_proxy > 0.0 && resolved.constant > 0.0) {
        return Err(Error::InvalidParameter(
            "s_of_k, sdim_proxy and constant must be positive".into(),
        ));
    }
    Ok(resolved)
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    let cfg: FileConfig = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: format!("config: {e}"),
    })?;
    Ok(cfg)
}
