//! Face triangulation that leaves the shortest-path metric untouched.
//!
//! Chords carry a sentinel weight of `(n+1) * max original edge weight`, so
//! no shortest path between original vertices ever uses one. Chords prefer
//! vertex pairs not yet adjacent; when every candidate pair is adjacent, a
//! parallel chord is embedded instead (the dual machinery works on the
//! multigraph, and distances are unaffected either way).

use crate::error::{Error, Result};
use crate::planar::embedding::{edge_of, PlanarEmbedding};
use crate::planar::PlanarInstance;

fn sentinel_weight(emb: &PlanarEmbedding) -> f64 {
    let max_w = emb
        .edges()
        .iter()
        .filter(|e| e.original)
        .map(|e| e.weight)
        .fold(0.0f64, f64::max);
    (emb.vertex_count() as f64 + 1.0) * max_w.max(1.0)
}

/// Adds chords until every face has three sides. Already-triangulated
/// instances are returned unchanged.
pub fn triangulate(instance: &PlanarInstance) -> Result<PlanarInstance> {
    if instance.is_triangulated() {
        return Ok(instance.clone());
    }
    let mut emb = instance.embedding().clone();
    let sentinel = sentinel_weight(&emb);

    loop {
        let faces = emb.faces();
        let target = faces.iter().find(|f| f.len() > 3);
        let Some(walk) = target else { break };
        let len = walk.len();
        // corner (i, i+1, i+2): cut the triangle off with chord (w_i, w_{i+2})
        let mut choice: Option<(usize, bool)> = None;
        for i in 0..len {
            let a = emb.tail(walk[i]);
            let b = emb.tail(walk[(i + 2) % len]);
            if a == b {
                continue;
            }
            let adjacent = emb
                .edges()
                .iter()
                .any(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a));
            if !adjacent {
                choice = Some((i, false));
                break;
            }
            if choice.is_none() {
                choice = Some((i, true));
            }
        }
        let Some((i, _parallel)) = choice else {
            return Err(Error::InvalidEmbedding(
                "face of length > 3 with no usable corner".into(),
            ));
        };
        let d_i = walk[i];
        let d_next = walk[(i + 1) % len];
        let d_after = walk[(i + 2) % len];
        let a = emb.tail(d_i);
        let b = emb.tail(d_after);
        // the chord precedes edge(d_i) at a and edge(d_after) at b, landing
        // inside this face on both sides
        emb.insert_chord(a, b, sentinel, edge_of(d_i), edge_of(d_after));
        debug_assert!(cut_is_consistent(&emb, d_i, d_next));
    }

    PlanarInstance::from_embedding(emb, true)
}

fn cut_is_consistent(emb: &PlanarEmbedding, d_i: usize, d_next: usize) -> bool {
    // after the cut, d_i and d_next lie on a triangle
    let mut d = d_i;
    for _ in 0..3 {
        d = emb.next_in_face(d);
    }
    d == d_i && emb.next_in_face(d_i) == d_next
}
