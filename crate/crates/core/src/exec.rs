//! Data-parallel kernels with a sequential fallback.
//!
//! With the `parallel` feature (default) the mapped variants run on rayon;
//! without it they alias the `*_seq` versions. Reductions used here are
//! associative and tie-broken deterministically, so both paths produce
//! identical results — the acceptance suite and the bench harness rely on
//! that equivalence.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` collecting results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential reference for [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Fold `f(i)` over `0..n` with an associative, commutative `combine`.
///
/// `identity` must be neutral for `combine`.
pub fn reduce_indexed<T, F, C>(n: usize, identity: T, f: F, combine: C) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        reduce_indexed_seq(n, identity, f, combine)
    }
}

/// Sequential reference for [`reduce_indexed`].
pub fn reduce_indexed_seq<T, F, C>(n: usize, identity: T, f: F, combine: C) -> T
where
    F: Fn(usize) -> T,
    C: Fn(T, T) -> T,
{
    (0..n).map(f).fold(identity, combine)
}
