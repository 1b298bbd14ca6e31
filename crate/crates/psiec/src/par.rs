//! Data-parallel loops with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers run on the rayon global
//! pool; without it they degrade to plain iterators. `*_mode` variants take
//! an explicit [`ExecMode`] so benchmarks can compare both paths in one
//! build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the batch helpers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon pool; falls back to sequential when the feature is disabled.
    Parallel,
}

impl ExecMode {
    /// Default mode for the current build.
    pub fn auto() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Maps `0..n` and collects the results in index order.
pub fn map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}

/// In-place map over a mutable slice with the element index.
pub fn for_each_mut<T, F>(mode: ExecMode, data: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    match mode {
        ExecMode::Sequential => {
            for (i, v) in data.iter_mut().enumerate() {
                f(i, v);
            }
        }
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                data.par_iter_mut().enumerate().for_each(|(i, v)| f(i, v));
            }
            #[cfg(not(feature = "parallel"))]
            {
                for (i, v) in data.iter_mut().enumerate() {
                    f(i, v);
                }
            }
        }
    }
}

/// Sum of `f(i)` over `0..n`.
pub fn sum_indexed<F>(mode: ExecMode, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).sum(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).sum()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).sum()
            }
        }
    }
}
