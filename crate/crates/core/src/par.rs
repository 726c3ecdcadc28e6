//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the [`Execution::Parallel`]
//! mode dispatches to rayon; without it every call runs sequentially and the
//! parallel mode is accepted but ignored.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Whether work actually fans out across threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Runs `f` on a dedicated pool of `threads` workers; sequential builds
/// simply call `f`.
pub fn with_threads<R, F>(threads: usize, f: F) -> crate::error::Result<R>
where
    R: Send,
    F: FnOnce() -> crate::error::Result<R> + Send,
{
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::error::Error::ResourceLimit(format!("thread pool: {e}")))?;
        pool.install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Maps `f` over the index range `0..n`, preserving order.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// True iff `pred` holds for some index in `range`.
pub fn any_in<F>(exec: Execution, range: std::ops::Range<usize>, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().any(pred);
    }
    let _ = exec;
    range.into_iter().any(pred)
}

/// The first (lowest-index) item for which `f` returns `Some`.
pub fn find_map_first<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Option<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    items.into_iter().find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map_range(exec, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert!(any_in(exec, 0..100, |i| i == 77));
            assert!(!any_in(exec, 0..10, |i| i > 10));
            let found = find_map_first(exec, (0..50).collect(), |i| (i % 7 == 6).then_some(i));
            assert_eq!(found, Some(6));
        }
    }
}
