//! Execution policy for the data-parallel parts of a step.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs interface
//! and cell loops on the rayon global pool. Without it, `Parallel` silently
//! falls back to the sequential path, so callers never need to `cfg` on it.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this policy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `inputs`, preserving order.
pub fn map_collect<T, R, F>(exec: Execution, inputs: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return inputs.par_iter().map(f).collect();
    }
    let _ = exec;
    inputs.iter().map(f).collect()
}
