//! Vertex-dependent portals on separator paths and the distance
//! approximators built from them.
//!
//! For a query vertex `y` and a shortest path `P`, the anchor `h_y` is the
//! path vertex nearest to `y`. The window around the anchor spans up to
//! `d(y,h_y)/eps` of along-path length on each side, and portals inside the
//! window are spaced greedily at along-path gaps exceeding `eps * d(y,h_y)`.
//! The resulting estimator `l_y` is within `(1 +- eps)` of the true distance
//! to every path vertex, and the two-sided path estimate `f_x^j` inherits
//! that bound against the through-path distance `d_j`.

use crate::error::{Error, Result};

/// A shortest path with along-path prefix lengths, treated as a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorPath {
    pub vertices: Vec<usize>,
    pub prefix: Vec<f64>,
}

impl SeparatorPath {
    pub fn new(vertices: Vec<usize>, prefix: Vec<f64>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() != prefix.len() {
            return Err(Error::InvalidParameter(
                "path needs matching vertex and prefix lists".into(),
            ));
        }
        if prefix.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "prefix lengths must increase strictly".into(),
            ));
        }
        Ok(SeparatorPath { vertices, prefix })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Along-path distance between two path positions.
    pub fn along(&self, i: usize, j: usize) -> f64 {
        (self.prefix[i] - self.prefix[j]).abs()
    }
}

/// Anchor, window, and portal sequence of one query vertex on one path.
#[derive(Clone, Debug)]
pub struct PortalStructure {
    pub epsilon: f64,
    /// Index of the anchor `h_y` on the path.
    pub anchor: usize,
    /// True distance `d(y, h_y) = d(y, P)`.
    pub anchor_dist: f64,
    /// Window `[a, b]` as path indices.
    pub window: (usize, usize),
    /// Portal indices `q_1 = a, ..., q_m = b` (strictly increasing).
    pub portals: Vec<usize>,
    /// True distances `d(y, q_t)` per portal.
    pub portal_dists: Vec<f64>,
}

/// Builds the portal structure for a query vertex given its true distances
/// to every path vertex.
pub fn build_portals(
    dist_to_path: &[f64],
    path: &SeparatorPath,
    epsilon: f64,
) -> Result<PortalStructure> {
    // the window/spacing construction is sound for any epsilon below 1;
    // consumers that rescale by 1/(1-eps) impose their own tighter range
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if dist_to_path.len() != path.len() {
        return Err(Error::InvalidParameter(
            "distance row does not match path length".into(),
        ));
    }
    let anchor = dist_to_path
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("path is nonempty");
    let hd = dist_to_path[anchor];
    let radius = hd / epsilon;

    let mut a = anchor;
    while a > 0 && path.along(anchor, a - 1) <= radius {
        a -= 1;
    }
    let mut b = anchor;
    while b + 1 < path.len() && path.along(anchor, b + 1) <= radius {
        b += 1;
    }

    // greedy spacing from a toward b, capped at b
    let gap = epsilon * hd;
    let mut portals = vec![a];
    let mut cur = a;
    while cur < b {
        let mut next = None;
        for u in (cur + 1)..path.len() {
            if path.along(cur, u) > gap {
                next = Some(u);
                break;
            }
        }
        match next {
            Some(u) if u <= b => {
                portals.push(u);
                cur = u;
            }
            _ => {
                portals.push(b);
                break;
            }
        }
    }
    let portal_dists = portals.iter().map(|&q| dist_to_path[q]).collect();
    Ok(PortalStructure {
        epsilon,
        anchor,
        anchor_dist: hd,
        window: (a, b),
        portals,
        portal_dists,
    })
}

impl PortalStructure {
    /// Hard bound on the portal count: `2 eps^-2 + 3`.
    pub fn portal_bound(epsilon: f64) -> f64 {
        2.0 / (epsilon * epsilon) + 3.0
    }

    /// The estimator `l_y(y')` for a path vertex index.
    ///
    /// Outside the window the along-path distance from the anchor stands in;
    /// inside, the true distance to the bracketing portal; at the window end,
    /// the true distance to the last portal.
    pub fn l_eval(&self, path: &SeparatorPath, y_prime: usize) -> f64 {
        let (a, b) = self.window;
        if y_prime < a || y_prime > b {
            return path.along(self.anchor, y_prime);
        }
        if y_prime == b {
            return *self.portal_dists.last().expect("portals nonempty");
        }
        // bracketing portal: largest t with portals[t] <= y'
        let t = match self.portals.binary_search(&y_prime) {
            Ok(t) => t,
            Err(ins) => ins - 1,
        };
        self.portal_dists[t]
    }
}

/// Two-sided estimate of the through-path distance `d_j(x, c)`: minimum of
/// `l_c(c') + along(c', x') + l_x(x')` over candidates
/// `c', x' in Q_c ∪ Q_x ∪ {endpoints}`.
pub fn approx_distance_through_path(
    x_portals: &PortalStructure,
    c_portals: &PortalStructure,
    path: &SeparatorPath,
) -> Result<f64> {
    if x_portals.epsilon != c_portals.epsilon {
        return Err(Error::MismatchedEpsilon {
            a: x_portals.epsilon,
            b: c_portals.epsilon,
        });
    }
    let mut candidates: Vec<usize> = x_portals
        .portals
        .iter()
        .chain(c_portals.portals.iter())
        .copied()
        .collect();
    candidates.push(0);
    candidates.push(path.len() - 1);
    candidates.sort_unstable();
    candidates.dedup();

    let mut best = f64::INFINITY;
    for &cp in &candidates {
        let lc = c_portals.l_eval(path, cp);
        for &xp in &candidates {
            let val = lc + path.along(cp, xp) + x_portals.l_eval(path, xp);
            if val < best {
                best = val;
            }
        }
    }
    Ok(best)
}

/// Exact through-path distance oracle:
/// `d_j(x,c) = min_u d(x,u) + d(u,c)` over path vertices `u`.
pub fn through_path_oracle(x_row: &[f64], c_row: &[f64], path: &SeparatorPath) -> f64 {
    path.vertices
        .iter()
        .map(|&u| x_row[u] + c_row[u])
        .fold(f64::INFINITY, f64::min)
}
