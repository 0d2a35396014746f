//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature (on by default) the sweeps fan out over rayon's
//! global pool. Without it, [`Strategy::Parallel`] quietly runs sequentially.
//! All helpers preserve input order so aggregate results never depend on the
//! schedule.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    #[cfg(feature = "parallel")]
    #[inline]
    fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Order-preserving map.
pub(crate) fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub(crate) fn map_range<R, F>(strategy: Strategy, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = strategy;
    range.map(f).collect()
}

/// The hit with the smallest index, if any.
pub(crate) fn find_first<R, F>(strategy: Strategy, range: Range<u64>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = strategy;
    range.into_iter().find_map(f)
}
