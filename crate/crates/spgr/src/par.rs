//! Data-parallel driver for the batch sweeps (table rebuilds, property
//! suites, appendix verification). With the `parallel` feature the default
//! entry point fans out over rayon; without it everything degrades to the
//! sequential path. The explicitly sequential variants stay available in
//! both builds so the two can be benchmarked against each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Always-sequential variant, kept for benchmarking the parallel speedup.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

/// Explicit-mode variant; `Parallel` degrades to sequential when the
/// feature is off.
pub fn map_collect_mode<T, U, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        Mode::Parallel => map_collect(items, f),
        Mode::Sequential => map_collect_seq(items, f),
    }
}
