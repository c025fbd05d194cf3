//! Partition of a degree-3 tree into subtrees with few marked nodes and few
//! boundary edges.
//!
//! Recursion: a subtree with fewer than 4 marked nodes is emitted as a part.
//! With exactly 4 boundary edges, an edge splitting them 2-2 exists (degree
//! argument) and is removed first; otherwise the most R-balanced edge is
//! removed. Every part ends with at most 4 boundary edges and at most 3
//! marked nodes.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TreePart {
    /// Sorted node ids of the subtree.
    pub nodes: Vec<usize>,
    /// Edge ids of the original tree with exactly one endpoint inside.
    pub boundary_edges: Vec<usize>,
    pub r_count: usize,
}

#[derive(Clone, Debug)]
pub struct TreePartitionResult {
    pub parts: Vec<TreePart>,
}

struct TreeView<'a> {
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge id)
    edges: &'a [(usize, usize)],
    in_r: Vec<bool>,
}

/// Connected component of `nodes` containing `start`, not crossing `banned`.
fn component(
    view: &TreeView,
    members: &[bool],
    start: usize,
    banned_edge: usize,
) -> Vec<usize> {
    let mut seen = vec![false; view.adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &(v, e) in &view.adj[u] {
            if e == banned_edge || !members[v] || seen[v] {
                continue;
            }
            seen[v] = true;
            stack.push(v);
        }
    }
    out.sort_unstable();
    out
}

fn r_count(view: &TreeView, nodes: &[usize]) -> usize {
    nodes.iter().filter(|&&v| view.in_r[v]).count()
}

/// Partitions the nodes of a tree (max degree 3) around the marked set `r`.
pub fn tree_partition(
    node_count: usize,
    edges: &[(usize, usize)],
    r: &[usize],
) -> Result<TreePartitionResult> {
    if node_count == 0 {
        return Err(Error::InvalidParameter("tree must be nonempty".into()));
    }
    if edges.len() + 1 != node_count {
        return Err(Error::InvalidParameter(format!(
            "{} edges for {node_count} nodes is not a tree",
            edges.len()
        )));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u >= node_count || v >= node_count {
            return Err(Error::InvalidParameter(format!(
                "edge {i} out of range"
            )));
        }
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    if let Some(v) = adj.iter().position(|nb| nb.len() > 3) {
        return Err(Error::InvalidParameter(format!(
            "node {v} has degree {} > 3",
            adj[v].len()
        )));
    }
    let mut in_r = vec![false; node_count];
    for &v in r {
        if v >= node_count {
            return Err(Error::InvalidParameter(format!(
                "marked node {v} out of range"
            )));
        }
        in_r[v] = true;
    }
    let view = TreeView {
        adj,
        edges,
        in_r,
    };

    let mut parts = Vec::new();
    let all: Vec<usize> = (0..node_count).collect();
    let mut work: Vec<(Vec<usize>, Vec<usize>)> = vec![(all, Vec::new())];

    while let Some((nodes, boundary)) = work.pop() {
        let rc = r_count(&view, &nodes);
        if rc < 4 {
            parts.push(TreePart {
                nodes,
                boundary_edges: boundary,
                r_count: rc,
            });
            continue;
        }
        let mut members = vec![false; node_count];
        for &v in &nodes {
            members[v] = true;
        }
        // active edges, deterministically ordered by id
        let active: Vec<usize> = (0..view.edges.len())
            .filter(|&e| members[view.edges[e].0] && members[view.edges[e].1])
            .collect();

        let split_edge = if boundary.len() == 4 {
            // boundary 2-2 split: endpoints inside the subtree per boundary edge
            let inside_of = |e: usize| -> usize {
                let (u, v) = view.edges[e];
                if members[u] {
                    u
                } else {
                    v
                }
            };
            let mut found = None;
            for &e in &active {
                let side = component(&view, &members, view.edges[e].0, e);
                let on_side = |x: usize| side.binary_search(&x).is_ok();
                let count_a = boundary.iter().filter(|&&be| on_side(inside_of(be))).count();
                if count_a == 2 {
                    found = Some(e);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::InvalidParameter(
                    "no 2-2 boundary split edge; tree degree invariant violated".into(),
                )
            })?
        } else {
            // most R-balanced edge, lowest id on ties
            let mut best: Option<(usize, usize)> = None; // (max side r, edge)
            for &e in &active {
                let side = component(&view, &members, view.edges[e].0, e);
                let ra = r_count(&view, &side);
                let score = ra.max(rc - ra);
                if best.is_none_or(|(s, _)| score < s) {
                    best = Some((score, e));
                }
            }
            let (score, e) =
                best.ok_or_else(|| Error::InvalidParameter("subtree has no edges".into()))?;
            debug_assert!(score < rc, "split must make progress");
            e
        };

        let side_a = component(&view, &members, view.edges[split_edge].0, split_edge);
        let side_b = component(&view, &members, view.edges[split_edge].1, split_edge);
        let mut boundary_a = vec![split_edge];
        let mut boundary_b = vec![split_edge];
        for &be in &boundary {
            let (u, v) = view.edges[be];
            let inside = if members[u] { u } else { v };
            if side_a.binary_search(&inside).is_ok() {
                boundary_a.push(be);
            } else {
                boundary_b.push(be);
            }
        }
        boundary_a.sort_unstable();
        boundary_b.sort_unstable();
        work.push((side_a, boundary_a));
        work.push((side_b, boundary_b));
    }

    parts.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    let result = TreePartitionResult { parts };
    debug_assert!(result.parts.len() <= (r.len() + 2).pow(3));
    Ok(result)
}

impl TreePartitionResult {
    /// Disjoint-cover check plus the per-part bounds.
    pub fn verify(&self, node_count: usize) -> Result<()> {
        let mut seen = vec![false; node_count];
        for part in &self.parts {
            if part.boundary_edges.len() > 4 {
                return Err(Error::InvalidParameter(format!(
                    "part has {} boundary edges",
                    part.boundary_edges.len()
                )));
            }
            if part.r_count > 3 {
                return Err(Error::InvalidParameter(format!(
                    "part has {} marked nodes",
                    part.r_count
                )));
            }
            for &v in &part.nodes {
                if seen[v] {
                    return Err(Error::InvalidParameter(format!(
                        "node {v} in two parts"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!("node {v} uncovered")));
        }
        Ok(())
    }
}
