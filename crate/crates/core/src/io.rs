//! File formats: point-set CSVs, graph and planar edge lists, and the JSON
//! artifact schemas shared with the command-line tools.
//!
//! Point sets are CSV with header `id,weight,c1,...,cm` (Euclidean) or
//! `id,weight,vertex` (graph-attached); rows with weight 0 join the ambient
//! space without entering the data set. Graphs are whitespace-separated edge
//! lists `u v w` under a first line `p <n> <m>`; planar inputs add one
//! rotation line `r <v> <e1> <e2> ...` per vertex, with edges numbered by
//! file order. All parsing is locale-independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::CoresetReport;
use crate::metric::{MetricHandle, PointId, WeightedPointSet};
use crate::planar::{PlanarDecomposition, PlanarInstance};
use crate::reduce::ScheduleDump;
use crate::sensitivity::{Coreset, Provenance};

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.trim().parse::<T>().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {what} from {tok:?}"),
    })
}

/// Euclidean CSV: ambient space plus data set. Rows must cover ids 0..n-1;
/// rows with weight > 0 form the weighted data set.
pub fn parse_euclidean_csv(text: &str) -> Result<(MetricHandle, WeightedPointSet)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 3 || cols[0] != "id" || cols[1] != "weight" {
        return Err(Error::Parse {
            line: 1,
            msg: "expected header id,weight,c1,...,cm".into(),
        });
    }
    let dim = cols.len() - 2;
    let mut rows: Vec<(usize, f64, Vec<f64>)> = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = raw.split(',').map(str::trim).collect();
        if toks.len() != dim + 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, got {}", dim + 2, toks.len()),
            });
        }
        let id: usize = parse_num(toks[0], line, "id")?;
        let weight: f64 = parse_num(toks[1], line, "weight")?;
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::Parse {
                line,
                msg: format!("weight must be nonnegative, got {weight}"),
            });
        }
        let coords = toks[2..]
            .iter()
            .map(|t| parse_num::<f64>(t, line, "coordinate"))
            .collect::<Result<Vec<f64>>>()?;
        rows.push((id, weight, coords));
    }
    rows.sort_by_key(|r| r.0);
    for (expect, row) in rows.iter().enumerate() {
        if row.0 != expect {
            return Err(Error::Parse {
                line: 0,
                msg: format!("ids must cover 0..n-1 exactly; missing or duplicate id {expect}"),
            });
        }
    }
    let coords: Vec<f64> = rows.iter().flat_map(|r| r.2.iter().copied()).collect();
    let metric = MetricHandle::euclidean(dim, coords)?;
    let points: Vec<PointId> = rows.iter().filter(|r| r.1 > 0.0).map(|r| r.0).collect();
    let weights: Vec<f64> = rows.iter().filter(|r| r.1 > 0.0).map(|r| r.1).collect();
    let x = WeightedPointSet::new(points, weights)?;
    Ok((metric, x))
}

/// Graph-attached point set: `id,weight,vertex` rows over a separate graph.
pub fn parse_graph_points_csv(text: &str, ambient: usize) -> Result<WeightedPointSet> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["id", "weight", "vertex"] {
        return Err(Error::Parse {
            line: 1,
            msg: "expected header id,weight,vertex".into(),
        });
    }
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = raw.split(',').map(str::trim).collect();
        if toks.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 3 fields, got {}", toks.len()),
            });
        }
        let _id: usize = parse_num(toks[0], line, "id")?;
        let weight: f64 = parse_num(toks[1], line, "weight")?;
        let vertex: usize = parse_num(toks[2], line, "vertex")?;
        if vertex >= ambient {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {vertex} out of range for |V| = {ambient}"),
            });
        }
        if weight > 0.0 {
            points.push(vertex);
            weights.push(weight);
        }
    }
    WeightedPointSet::new(points, weights)
}

/// (vertex count, edge count, edges, lines consumed).
type GraphHeader = (usize, usize, Vec<(usize, usize, f64)>, usize);

fn parse_graph_header(text: &str) -> Result<GraphHeader> {
    let mut n = 0usize;
    let mut m = 0usize;
    let mut edges = Vec::new();
    let mut consumed = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        consumed = line;
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if edges.is_empty() && n == 0 {
            if toks.len() != 3 || toks[0] != "p" {
                return Err(Error::Parse {
                    line,
                    msg: "expected first line `p <n> <m>`".into(),
                });
            }
            n = parse_num(toks[1], line, "vertex count")?;
            m = parse_num(toks[2], line, "edge count")?;
            continue;
        }
        if toks[0] == "r" {
            consumed = line - 1;
            break;
        }
        if toks.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected edge line `u v w`, got {trimmed:?}"),
            });
        }
        let u: usize = parse_num(toks[0], line, "endpoint")?;
        let v: usize = parse_num(toks[1], line, "endpoint")?;
        let w: f64 = parse_num(toks[2], line, "weight")?;
        edges.push((u, v, w));
        if edges.len() == m {
            consumed = line;
            break;
        }
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: consumed,
            msg: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Ok((n, m, edges, consumed))
}

/// Edge-list graph: `p <n> <m>` then `u v w` lines.
pub fn parse_graph(text: &str) -> Result<MetricHandle> {
    let (n, _, edges, _) = parse_graph_header(text)?;
    MetricHandle::graph(n, &edges)
}

/// Planar input: edge-list graph plus one rotation line per vertex
/// (`r <v> <e1> <e2> ...`, edge ids by file order).
pub fn parse_planar(text: &str) -> Result<PlanarInstance> {
    let (n, _, edges, consumed) = parse_graph_header(text)?;
    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate().skip(consumed) {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks[0] != "r" {
            return Err(Error::Parse {
                line,
                msg: format!("expected rotation line `r <v> <edges...>`, got {trimmed:?}"),
            });
        }
        let v: usize = parse_num(toks[1], line, "vertex")?;
        if v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {v} out of range"),
            });
        }
        let rot = toks[2..]
            .iter()
            .map(|t| parse_num::<usize>(t, line, "edge id"))
            .collect::<Result<Vec<usize>>>()?;
        rotations[v] = Some(rot);
    }
    let rotations: Vec<Vec<usize>> = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("missing rotation line for vertex {v}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PlanarInstance::new(n, &edges, rotations)
}

#[derive(Serialize, Deserialize)]
struct CoresetEntryJson {
    id: usize,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct CoresetJson {
    entries: Vec<CoresetEntryJson>,
    provenance: Provenance,
}

pub fn coreset_to_json(coreset: &Coreset) -> String {
    let doc = CoresetJson {
        entries: coreset
            .entries
            .iter()
            .map(|&(id, weight)| CoresetEntryJson { id, weight })
            .collect(),
        provenance: coreset.provenance.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("coreset serializes")
}

pub fn coreset_from_json(text: &str) -> Result<Coreset> {
    let doc: CoresetJson = serde_json::from_str(text)?;
    Ok(Coreset {
        entries: doc.entries.into_iter().map(|e| (e.id, e.weight)).collect(),
        provenance: doc.provenance,
    })
}

/// Solver output schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    pub centers: Vec<usize>,
    pub cost: f64,
    pub k: usize,
    pub z: f64,
    pub method: String,
    pub seed: Option<u64>,
}

pub fn solution_to_json(solution: &SolutionJson) -> String {
    serde_json::to_string_pretty(solution).expect("solution serializes")
}

pub fn schedule_to_json(dump: &ScheduleDump) -> String {
    serde_json::to_string_pretty(dump).expect("schedule serializes")
}

pub fn report_to_json(report: &CoresetReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

/// One CSV row per certification trial.
pub fn report_csv_header() -> &'static str {
    "seed,max_relative_error,enumerated_count,mode,pass"
}

pub fn report_csv_row(seed: u64, report: &CoresetReport) -> String {
    let mode = match report.mode {
        crate::harness::CertifyMode::Exhaustive => "exhaustive",
        crate::harness::CertifyMode::Sampled => "sampled",
    };
    format!(
        "{seed},{},{},{mode},{}",
        report.max_relative_error, report.enumerated_count, report.pass
    )
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    parts: Vec<DecompositionPartJson>,
    paths: Vec<Vec<usize>>,
    s: Vec<usize>,
    root: usize,
}

#[derive(Serialize, Deserialize)]
struct DecompositionPartJson {
    vertices: Vec<usize>,
    path_ids: Vec<usize>,
    r_face_count: usize,
}

pub fn decomposition_to_json(d: &PlanarDecomposition) -> String {
    let doc = DecompositionJson {
        parts: d
            .parts
            .iter()
            .map(|p| DecompositionPartJson {
                vertices: p.vertices.clone(),
                path_ids: p.path_ids.clone(),
                r_face_count: p.r_face_count,
            })
            .collect(),
        paths: d.paths.iter().map(|p| p.vertices.clone()).collect(),
        s: d.s.clone(),
        root: d.root,
    };
    serde_json::to_string_pretty(&doc).expect("decomposition serializes")
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    source_dim: usize,
    target_dim: usize,
    post_scale: f64,
    verified_distortion: f64,
    seed: u64,
    retries_used: u32,
    /// Row-major matrix, little-endian f64, base64.
    matrix_b64: String,
}

pub fn embedding_to_json(e: &crate::embedding::ProjectionEmbedding) -> String {
    use base64::Engine;
    let mut bytes = Vec::with_capacity(8 * e.matrix.len());
    for v in &e.matrix {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    let doc = EmbeddingJson {
        source_dim: e.source_dim,
        target_dim: e.target_dim,
        post_scale: e.post_scale,
        verified_distortion: e.verified_distortion,
        seed: e.seed,
        retries_used: e.retries_used,
        matrix_b64: base64::engine::general_purpose::STANDARD.encode(&bytes),
    };
    serde_json::to_string_pretty(&doc).expect("embedding serializes")
}

pub fn embedding_from_json(text: &str) -> Result<crate::embedding::ProjectionEmbedding> {
    use base64::Engine;
    let doc: EmbeddingJson = serde_json::from_str(text)?;
    let bytes = base64::engine::general_purpose::STANDARD
        .decode(doc.matrix_b64.as_bytes())
        .map_err(|e| Error::Parse {
            line: 0,
            msg: format!("bad base64 matrix: {e}"),
        })?;
    if bytes.len() % 8 != 0 || bytes.len() / 8 != doc.source_dim * doc.target_dim {
        return Err(Error::Parse {
            line: 0,
            msg: "matrix byte length does not match dimensions".into(),
        });
    }
    let matrix: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(crate::embedding::ProjectionEmbedding {
        source_dim: doc.source_dim,
        target_dim: doc.target_dim,
        matrix,
        post_scale: doc.post_scale,
        verified_distortion: doc.verified_distortion,
        seed: doc.seed,
        retries_used: doc.retries_used,
    })
}
