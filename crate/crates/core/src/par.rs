//! Order-preserving data-parallel helpers.
//!
//! With the `parallel` feature (default) these run on the rayon pool; without
//! it they fall back to plain iterators. Every helper returns results in the
//! same order as the sequential version, so output never depends on
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many outer iterations the rayon split costs more than it saves.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 8;

/// First `Some` produced by `f` over `0..n`, in index order.
pub(crate) fn find_map_first<R, F>(n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_THRESHOLD {
        return (0..n).into_par_iter().find_map_first(f);
    }
    (0..n).find_map(f)
}

pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= PAR_THRESHOLD {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub(crate) fn filter_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= PAR_THRESHOLD {
        return items.par_iter().filter_map(f).collect();
    }
    items.iter().filter_map(f).collect()
}

/// Whether the crate was built with the rayon backend.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
