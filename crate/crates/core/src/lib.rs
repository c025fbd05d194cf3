//! Coreset construction for k-median and (k,z)-clustering.
//!
//! The crate builds small weighted subsets (coresets) of a data set that
//! preserve the clustering cost against every candidate center set, over
//! Euclidean, graph shortest-path, and explicit-matrix metrics. The main
//! pipeline is sensitivity-based importance sampling seeded by a bicriteria
//! solver, optionally chained through an iterative size-reduction schedule,
//! and optionally run on top of a distance-reducing embedding (Gaussian
//! projection for Euclidean inputs, separator portals for planar graphs).
//!
//! Everything randomized is deterministic given a seed, and everything
//! approximate ships with a brute-force oracle (`harness`, `solvers`) so the
//! guarantees can be certified exhaustively at small scale.

pub mod calibration;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod harness;
pub mod io;
pub mod metric;
pub mod planar;
pub mod reduce;
pub mod rng;
pub mod sensitivity;
pub mod solvers;

pub use error::{Error, Result};
pub use metric::{
    cost, distance, distances_to_set, power_triangle_check, CenterSet, ClusteringParams,
    MetricHandle, PointId, WeightedPointSet,
};
