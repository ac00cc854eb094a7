//! Data-parallel map helpers.
//!
//! Grid sweeps and Monte-Carlo trials are independent per index, so they run
//! on rayon when the `parallel` feature is enabled (the default) and fall back
//! to a plain loop otherwise. Output order is always input order, so results
//! are identical under any schedule. `map_indexed_seq` is the sequential path
//! kept unconditionally for benches and A/B checks.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, preserving index order in the output.
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
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_indexed`], available regardless of features.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
