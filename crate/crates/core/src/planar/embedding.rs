//! Combinatorial planar embeddings: rotation systems, darts, face tracing.
//!
//! A dart is a directed half-edge, encoded `2*edge + dir`. Faces are the
//! orbits of the walk "reverse the dart, then take the next edge in the
//! rotation at its tail"; a rotation system is accepted as planar exactly
//! when Euler's formula `|V| - |E| + |F| = 2` holds for the connected graph.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PlanarEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// False for triangulation chords.
    pub original: bool,
}

impl PlanarEdge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Dart helpers: dart id = 2*edge + dir, dir 0 runs u -> v.
pub fn dart(edge: usize, dir: usize) -> usize {
    2 * edge + dir
}

pub fn edge_of(d: usize) -> usize {
    d / 2
}

pub fn reverse(d: usize) -> usize {
    d ^ 1
}

#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    n: usize,
    edges: Vec<PlanarEdge>,
    /// Cyclic order of incident edge ids around each vertex.
    rot: Vec<Vec<usize>>,
}

impl PlanarEmbedding {
    pub fn new(n: usize, edges: Vec<PlanarEdge>, rot: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidEmbedding("graph must have vertices".into()));
        }
        if rot.len() != n {
            return Err(Error::InvalidEmbedding(format!(
                "{} rotation lines for {n} vertices",
                rot.len()
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidEmbedding(format!(
                    "edge {i} endpoints ({},{}) out of range",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidEmbedding(format!("self-loop at edge {i}")));
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidEmbedding(format!(
                    "edge {i} weight must be positive, got {}",
                    e.weight
                )));
            }
        }
        let emb = PlanarEmbedding { n, edges, rot };
        emb.validate()?;
        Ok(emb)
    }

    /// Rotation system from a straight-line drawing: incident edges sorted by
    /// angle around each vertex.
    pub fn from_straight_line(
        coords: &[(f64, f64)],
        edges: Vec<PlanarEdge>,
    ) -> Result<Self> {
        let n = coords.len();
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            rot[e.u].push(i);
            rot[e.v].push(i);
        }
        for (v, list) in rot.iter_mut().enumerate() {
            list.sort_by(|&a, &b| {
                let pa = coords[edges[a].other(v)];
                let pb = coords[edges[b].other(v)];
                let ang_a = (pa.1 - coords[v].1).atan2(pa.0 - coords[v].0);
                let ang_b = (pb.1 - coords[v].1).atan2(pb.0 - coords[v].0);
                ang_a.total_cmp(&ang_b).then(a.cmp(&b))
            });
        }
        PlanarEmbedding::new(n, edges, rot)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[PlanarEdge] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn tail(&self, d: usize) -> usize {
        let e = &self.edges[edge_of(d)];
        if d.is_multiple_of(2) {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(reverse(d))
    }

    fn dart_from(&self, vertex: usize, edge: usize) -> usize {
        if self.edges[edge].u == vertex {
            dart(edge, 0)
        } else {
            dart(edge, 1)
        }
    }

    /// Successor of `d` along its face: next rotation edge at `head(d)`.
    pub fn next_in_face(&self, d: usize) -> usize {
        let h = self.head(d);
        let e = edge_of(d);
        let list = &self.rot[h];
        let pos = list
            .iter()
            .position(|&x| x == e)
            .expect("rotation must contain incident edge");
        let next_edge = list[(pos + 1) % list.len()];
        self.dart_from(h, next_edge)
    }

    /// Face orbits in deterministic order (smallest dart first), as dart lists.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let dart_count = 2 * self.edges.len();
        let mut seen = vec![false; dart_count];
        let mut faces = Vec::new();
        for start in 0..dart_count {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                walk.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        faces
    }

    /// Face index of every dart.
    pub fn face_of_darts(&self, faces: &[Vec<usize>]) -> Vec<usize> {
        let mut out = vec![usize::MAX; 2 * self.edges.len()];
        for (fi, f) in faces.iter().enumerate() {
            for &d in f {
                out[d] = fi;
            }
        }
        out
    }

    /// Sorted distinct vertices on a face walk.
    pub fn face_vertices(&self, face: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = face.iter().map(|&d| self.tail(d)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn validate(&self) -> Result<()> {
        // each rotation lists exactly the incident edges, once each
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        for (v, inc) in incident.iter().enumerate() {
            let mut a = inc.clone();
            let mut b = self.rot[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::InvalidEmbedding(format!(
                    "rotation at vertex {v} does not list its incident edges"
                )));
            }
        }
        // connectivity
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &e in &self.rot[u] {
                let w = self.edges[e].other(u);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(unreached) = seen.iter().position(|s| !s) {
            return Err(Error::DisconnectedGraph { unreached });
        }
        // Euler check
        let f = self.faces().len() as i64;
        let v = self.n as i64;
        let e = self.edges.len() as i64;
        if v - e + f != 2 {
            return Err(Error::InvalidEmbedding(format!(
                "Euler check failed: V={v} E={e} F={f}"
            )));
        }
        Ok(())
    }

    /// Inserts a chord between the tails of face darts `d_i` and `d_{i+2}`,
    /// cutting a triangle off the face. `before_at_a` / `before_at_b` are the
    /// edges the chord must precede in the rotations at its endpoints.
    pub(crate) fn insert_chord(
        &mut self,
        a: usize,
        b: usize,
        weight: f64,
        before_at_a: usize,
        before_at_b: usize,
    ) -> usize {
        let id = self.edges.len();
        self.edges.push(PlanarEdge {
            u: a,
            v: b,
            weight,
            original: false,
        });
        let pos_a = self.rot[a]
            .iter()
            .position(|&e| e == before_at_a)
            .expect("rotation at a must contain the reference edge");
        self.rot[a].insert(pos_a, id);
        let pos_b = self.rot[b]
            .iter()
            .position(|&e| e == before_at_b)
            .expect("rotation at b must contain the reference edge");
        self.rot[b].insert(pos_b, id);
        id
    }
}
