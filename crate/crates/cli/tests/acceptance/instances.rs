//! Fixed instance families for the acceptance suite: 20 desk-scale
//! instances (|V| <= 14, |X|_0 <= 14, k in 1..=3, z in {1,2}), half
//! Euclidean, half graph shortest-path.

use coreset_core::metric::{MetricHandle, WeightedPointSet};
use coreset_core::rng::StreamRng;
use rand::Rng;

pub struct Instance {
    pub name: &'static str,
    pub metric: MetricHandle,
    pub x: WeightedPointSet,
    pub k: usize,
    pub z: f64,
}

fn line(points: &[f64]) -> MetricHandle {
    MetricHandle::euclidean(1, points.to_vec()).unwrap()
}

fn plane(points: &[(f64, f64)]) -> MetricHandle {
    let coords: Vec<f64> = points.iter().flat_map(|&(a, b)| [a, b]).collect();
    MetricHandle::euclidean(2, coords).unwrap()
}

fn unit(n: usize) -> WeightedPointSet {
    WeightedPointSet::unit((0..n).collect()).unwrap()
}

fn random_connected_graph(seed: u64, n: usize, extra: usize) -> MetricHandle {
    let rng = StreamRng::new(seed);
    let mut r = rng.stream(0);
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for v in 1..n {
        let u = (r.random::<u32>() as usize) % v;
        edges.push((u, v, 0.3 + 1.7 * r.random::<f64>()));
    }
    let mut added = 0;
    while added < extra {
        let u = (r.random::<u32>() as usize) % n;
        let v = (r.random::<u32>() as usize) % n;
        let (u, v) = (u.min(v), u.max(v));
        if u == v || edges.iter().any(|&(a, b, _)| (a, b) == (u, v)) {
            added += 1; // keep the loop bounded; skip duplicates
            continue;
        }
        edges.push((u, v, 0.3 + 1.7 * r.random::<f64>()));
        added += 1;
    }
    MetricHandle::graph(n, &edges).unwrap()
}

fn random_plane(seed: u64, n: usize, spread: f64) -> MetricHandle {
    let rng = StreamRng::new(seed);
    let mut r = rng.stream(0);
    let coords: Vec<f64> = (0..2 * n).map(|_| r.random::<f64>() * spread).collect();
    MetricHandle::euclidean(2, coords).unwrap()
}

pub fn criterion_one_instances() -> Vec<Instance> {
    let mut out = Vec::new();

    // --- Euclidean ---
    out.push(Instance {
        name: "e-line-uniform",
        metric: line(&[0.0, 1.0, 2.1, 2.9, 4.2, 5.0, 6.3, 7.1, 8.0, 9.2, 10.1, 11.0]),
        x: unit(12),
        k: 1,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-line-two-clusters",
        metric: line(&[0.0, 0.3, 0.7, 1.1, 1.4, 0.9, 20.0, 20.4, 20.9, 21.3, 19.8, 21.0]),
        x: unit(12),
        k: 2,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-plane-three-clusters",
        metric: plane(&[
            (0.0, 0.0),
            (0.4, 0.3),
            (0.2, 0.8),
            (0.9, 0.1),
            (10.0, 10.0),
            (10.3, 9.6),
            (9.7, 10.4),
            (10.5, 10.2),
            (0.0, 12.0),
            (0.5, 11.7),
            (0.3, 12.4),
            (0.8, 12.1),
        ]),
        x: unit(12),
        k: 3,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-plane-random-z2",
        metric: random_plane(101, 14, 8.0),
        x: unit(14),
        k: 2,
        z: 2.0,
    });
    out.push(Instance {
        name: "e-line-geometric-z2",
        metric: line(&[0.0, 0.5, 1.25, 2.4, 4.0, 6.5, 10.2, 15.8, 24.0, 36.0]),
        x: unit(10),
        k: 1,
        z: 2.0,
    });
    out.push(Instance {
        name: "e-ring-z2",
        metric: plane(&{
            let mut pts = Vec::new();
            for i in 0..13 {
                let a = i as f64 / 13.0 * std::f64::consts::TAU;
                pts.push((5.0 * a.cos(), 5.0 * a.sin()));
            }
            pts
        }),
        x: unit(13),
        k: 3,
        z: 2.0,
    });
    out.push(Instance {
        name: "e-3d-weighted",
        metric: {
            let rng = StreamRng::new(202);
            let mut r = rng.stream(0);
            let coords: Vec<f64> = (0..36).map(|_| r.random::<f64>() * 6.0).collect();
            MetricHandle::euclidean(3, coords).unwrap()
        },
        x: WeightedPointSet::new(
            (0..12).collect(),
            vec![1.0, 3.0, 0.5, 2.0, 1.0, 1.0, 0.25, 4.0, 1.5, 1.0, 2.0, 0.75],
        )
        .unwrap(),
        k: 2,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-plane-grid",
        metric: plane(&{
            let mut pts = Vec::new();
            for r in 0..2 {
                for c in 0..7 {
                    pts.push((c as f64 * 1.3, r as f64 * 1.7));
                }
            }
            pts
        }),
        x: unit(14),
        k: 3,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-line-skew-ambient",
        metric: line(&[0.0, 0.9, 2.0, 3.2, 4.1, 5.5, 6.0, 7.7, 8.5, 9.9]),
        // points 8 and 9 are ambient-only candidate centers
        x: WeightedPointSet::new(
            (0..8).collect(),
            vec![10.0, 1.0, 0.2, 1.0, 5.0, 1.0, 0.5, 2.0],
        )
        .unwrap(),
        k: 1,
        z: 1.0,
    });
    out.push(Instance {
        name: "e-plane-outlier-z2",
        metric: plane(&[
            (0.0, 0.0),
            (0.5, 0.4),
            (0.1, 0.9),
            (0.8, 0.2),
            (0.4, 0.6),
            (7.0, 7.0),
            (7.5, 6.6),
            (7.2, 7.4),
            (6.8, 7.1),
            (7.9, 6.9),
            (40.0, 0.0),
            (0.0, 40.0),
        ]),
        x: unit(12),
        k: 2,
        z: 2.0,
    });

    // --- graph shortest-path ---
    out.push(Instance {
        name: "g-path",
        metric: MetricHandle::graph(
            12,
            &(0..11).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>(),
        )
        .unwrap(),
        x: unit(12),
        k: 1,
        z: 1.0,
    });
    out.push(Instance {
        name: "g-cycle",
        metric: {
            let mut edges: Vec<(usize, usize, f64)> =
                (0..11).map(|i| (i, i + 1, 1.0 + 0.1 * i as f64)).collect();
            edges.push((11, 0, 1.0));
            MetricHandle::graph(12, &edges).unwrap()
        },
        x: unit(12),
        k: 2,
        z: 1.0,
    });
    out.push(Instance {
        name: "g-tree-weighted",
        metric: random_connected_graph(303, 14, 0),
        x: WeightedPointSet::new(
            (0..14).collect(),
            vec![
                1.0, 2.0, 1.0, 0.5, 3.0, 1.0, 1.5, 1.0, 0.25, 2.5, 1.0, 1.0, 0.75, 1.0,
            ],
        )
        .unwrap(),
        k: 2,
        z: 1.0,
    });
    out.push(Instance {
        name: "g-grid-z2",
        metric: {
            let (w, h) = (4, 3);
            let mut edges = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    let id = r * w + c;
                    if c + 1 < w {
                        edges.push((id, id + 1, 1.0));
                    }
                    if r + 1 < h {
                        edges.push((id, id + w, 1.2));
                    }
                }
            }
            MetricHandle::graph(12, &edges).unwrap()
        },
        x: unit(12),
        k: 2,
        z: 2.0,
    });
    out.push(Instance {
        name: "g-random-k3",
        metric: random_connected_graph(404, 13, 8),
        x: unit(13),
        k: 3,
        z: 1.0,
    });
    out.push(Instance {
        name: "g-star-z2",
        metric: MetricHandle::graph(
            10,
            &(1..10).map(|i| (0, i, 0.5 + 0.25 * i as f64)).collect::<Vec<_>>(),
        )
        .unwrap(),
        x: unit(10),
        k: 1,
        z: 2.0,
    });
    out.push(Instance {
        name: "g-two-blobs",
        metric: {
            let mut edges = Vec::new();
            for i in 0..6 {
                for j in (i + 1)..6 {
                    edges.push((i, j, 0.5));
                }
            }
            for i in 6..12 {
                for j in (i + 1)..12 {
                    edges.push((i, j, 0.5));
                }
            }
            edges.push((2, 8, 12.0)); // bridge
            MetricHandle::graph(12, &edges).unwrap()
        },
        x: unit(12),
        k: 2,
        z: 1.0,
    });
    out.push(Instance {
        name: "g-grid-diag-k3-z2",
        metric: {
            let (w, h) = (4, 3);
            let mut edges = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    let id = r * w + c;
                    if c + 1 < w {
                        edges.push((id, id + 1, 1.0));
                    }
                    if r + 1 < h {
                        edges.push((id, id + w, 1.0));
                    }
                    if c + 1 < w && r + 1 < h {
                        edges.push((id, id + w + 1, 1.4));
                    }
                }
            }
            MetricHandle::graph(12, &edges).unwrap()
        },
        x: unit(12),
        k: 3,
        z: 2.0,
    });
    out.push(Instance {
        name: "g-random-weighted-z2",
        metric: random_connected_graph(505, 14, 10),
        // vertices 12, 13 are ambient-only
        x: WeightedPointSet::new(
            (0..12).collect(),
            vec![2.0, 1.0, 1.0, 4.0, 0.5, 1.0, 1.0, 2.0, 1.0, 0.3, 1.0, 1.5],
        )
        .unwrap(),
        k: 2,
        z: 2.0,
    });
    out.push(Instance {
        name: "g-caterpillar-k3",
        metric: {
            let mut edges: Vec<(usize, usize, f64)> =
                (0..5).map(|i| (i, i + 1, 2.0)).collect();
            for leaf in 0..6 {
                edges.push((leaf, 6 + leaf, 0.4));
            }
            MetricHandle::graph(12, &edges).unwrap()
        },
        x: unit(12),
        k: 3,
        z: 1.0,
    });

    assert_eq!(out.len(), 20);
    for inst in &out {
        assert!(inst.metric.size() <= 14);
        assert!(inst.x.size() <= 14);
        assert!(inst.k >= 1 && inst.k <= 3);
        assert!(inst.z == 1.0 || inst.z == 2.0);
    }
    out
}

/// Small instances for the exhaustive sensitivity sweep (|V| <= 10, k <= 2).
pub fn sensitivity_instances() -> Vec<Instance> {
    vec![
        Instance {
            name: "s-line-8",
            metric: line(&[0.0, 0.7, 1.9, 3.1, 4.0, 6.5, 7.2, 9.9]),
            x: unit(8),
            k: 2,
            z: 1.0,
        },
        Instance {
            name: "s-line-weighted",
            metric: line(&[0.0, 1.0, 2.5, 4.0, 5.5, 8.0, 9.0]),
            x: WeightedPointSet::new(
                (0..7).collect(),
                vec![3.0, 1.0, 0.5, 2.0, 1.0, 0.25, 1.5],
            )
            .unwrap(),
            k: 2,
            z: 1.0,
        },
        Instance {
            name: "s-plane-10",
            metric: random_plane(606, 10, 5.0),
            x: unit(10),
            k: 2,
            z: 2.0,
        },
        Instance {
            name: "s-graph-9",
            metric: random_connected_graph(707, 9, 5),
            x: unit(9),
            k: 2,
            z: 1.0,
        },
        Instance {
            name: "s-graph-10-z2",
            metric: random_connected_graph(808, 10, 6),
            x: WeightedPointSet::new(
                (0..9).collect(),
                vec![1.0, 2.0, 1.0, 0.5, 1.0, 3.0, 1.0, 0.75, 1.0],
            )
            .unwrap(),
            k: 1,
            z: 2.0,
        },
        Instance {
            name: "s-star-8",
            metric: MetricHandle::graph(
                8,
                &(1..8).map(|i| (0, i, 0.3 + 0.4 * i as f64)).collect::<Vec<_>>(),
            )
            .unwrap(),
            x: unit(8),
            k: 2,
            z: 1.0,
        },
    ]
}
