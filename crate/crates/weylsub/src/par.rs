//! Thin execution layer over the data-parallel sweeps.
//!
//! With the `parallel` feature (default) the [`Exec::Parallel`] paths fan out
//! over rayon's global pool; without it they degrade to the sequential code.
//! [`Exec::Sequential`] always runs in-thread, which is what the benchmarks
//! use to compare the two.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Use the rayon pool when the `parallel` feature is enabled.
    #[default]
    Parallel,
    /// Force the sequential path.
    Sequential,
}

/// Map `f` over `items`, in parallel when requested and available.
pub fn map_items<T: Sync, R: Send>(
    exec: Exec,
    items: &[T],
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Parallel => items.iter().map(f).collect(),
        Exec::Sequential => items.iter().map(f).collect(),
    }
}

/// Map `f` over the index range `0..n`.
pub fn map_range<R: Send>(exec: Exec, n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Parallel => (0..n).map(f).collect(),
        Exec::Sequential => (0..n).map(f).collect(),
    }
}
