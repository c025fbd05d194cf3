//! Deterministic planar instance generators for tests, benches, and demos.

use rand::Rng;

use crate::planar::PlanarInstance;
use crate::rng::StreamRng;

pub fn triangle_instance() -> PlanarInstance {
    let coords = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    PlanarInstance::from_straight_line(
        &coords,
        &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)],
    )
    .expect("triangle is planar")
}

pub fn square_cycle() -> PlanarInstance {
    let coords = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    PlanarInstance::from_straight_line(
        &coords,
        &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)],
    )
    .expect("square is planar")
}

/// w x h grid with unit weights.
pub fn grid_instance(w: usize, h: usize) -> PlanarInstance {
    let mut coords = Vec::new();
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            coords.push((c as f64, r as f64));
            let id = r * w + c;
            if c + 1 < w {
                edges.push((id, id + 1, 1.0));
            }
            if r + 1 < h {
                edges.push((id, id + w, 1.0));
            }
        }
    }
    PlanarInstance::from_straight_line(&coords, &edges).expect("grid is planar")
}

/// Random grid-based planar instance: random dimensions (vertex count at most
/// `max_n`), random positive weights, and a random diagonal in each cell.
pub fn random_planar_instance(seed: u64, max_n: usize) -> PlanarInstance {
    let rng = StreamRng::new(seed);
    let mut r = rng.stream(0);
    let side = |r: &mut rand_chacha::ChaCha8Rng| 2 + (r.random::<u32>() as usize) % 5;
    let (mut w, mut h) = (side(&mut r), side(&mut r));
    while w * h > max_n.max(4) {
        if w >= h {
            w -= 1;
        } else {
            h -= 1;
        }
    }
    let mut coords = Vec::new();
    let mut edges = Vec::new();
    let push = |edges: &mut Vec<(usize, usize, f64)>, u: usize, v: usize, r: &mut rand_chacha::ChaCha8Rng| {
        edges.push((u, v, 0.3 + 2.0 * r.random::<f64>()));
    };
    for row in 0..h {
        for col in 0..w {
            coords.push((col as f64, row as f64));
            let id = row * w + col;
            if col + 1 < w {
                push(&mut edges, id, id + 1, &mut r);
            }
            if row + 1 < h {
                push(&mut edges, id, id + w, &mut r);
            }
        }
    }
    for row in 0..h.saturating_sub(1) {
        for col in 0..w.saturating_sub(1) {
            let id = row * w + col;
            if r.random::<f64>() < 0.5 {
                if r.random::<bool>() {
                    push(&mut edges, id, id + w + 1, &mut r);
                } else {
                    push(&mut edges, id + 1, id + w, &mut r);
                }
            }
        }
    }
    // thin out: delete random edges while the graph stays connected, so the
    // family also covers bridges, degree-1 vertices, and large faces
    let n = w * h;
    let deletions = edges.len() / 5;
    for _ in 0..deletions {
        let cand = (r.random::<u32>() as usize) % edges.len();
        let mut kept: Vec<(usize, usize, f64)> = edges.clone();
        kept.swap_remove(cand);
        if connected(n, &kept) {
            edges = kept;
        }
    }
    PlanarInstance::from_straight_line(&coords, &edges).expect("grid with diagonals is planar")
}

fn connected(n: usize, edges: &[(usize, usize, f64)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_produce_valid_instances() {
        triangle_instance();
        square_cycle();
        let g = grid_instance(4, 5);
        assert_eq!(g.embedding().vertex_count(), 20);
        for seed in 0..5 {
            let inst = random_planar_instance(seed, 40);
            assert!(inst.embedding().vertex_count() <= 40);
        }
    }
}
