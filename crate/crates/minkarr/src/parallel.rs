//! Data-parallel map over an index range, with a sequential fallback when the
//! `parallel` feature is disabled. Results are collected in index order, so
//! callers are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_indexed<R, F>(n: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    (0..n).map(f).collect()
}
