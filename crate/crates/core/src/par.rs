//! Order-preserving range evaluation.
//!
//! With the `parallel` feature (default) work over `lo..=hi` is spread across a
//! dedicated rayon pool of the requested size. Without it, or with a single
//! job, evaluation is a plain sequential loop. Results come back in ascending
//! `n` order either way, so output never depends on scheduling.

use std::num::NonZeroUsize;

/// Worker count for range scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jobs(NonZeroUsize);

impl Jobs {
    pub const SEQUENTIAL: Jobs = Jobs(NonZeroUsize::MIN);

    /// Zero is treated as one.
    pub fn new(count: usize) -> Self {
        Jobs(NonZeroUsize::new(count).unwrap_or(NonZeroUsize::MIN))
    }

    pub fn get(self) -> usize {
        self.0.get()
    }

    /// One job per available core.
    pub fn available() -> Self {
        Jobs(std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn is_sequential(self) -> bool {
        self.get() == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Jobs {
    fn default() -> Self {
        Jobs::available()
    }
}

/// Applies `f` to every `n` in `lo..=hi`, keeping the `Some` results in order.
/// Stops at an error; with several workers, which error is reported is not
/// specified.
pub fn try_filter_map_range<T, E, F>(lo: u64, hi: u64, jobs: Jobs, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<Option<T>, E> + Sync + Send,
{
    if lo > hi {
        return Ok(Vec::new());
    }
    if jobs.is_sequential() {
        return (lo..=hi).filter_map(|n| f(n).transpose()).collect();
    }
    parallel(lo, hi, jobs, f)
}

/// Infallible form of [`try_filter_map_range`].
pub fn filter_map_range<T, F>(lo: u64, hi: u64, jobs: Jobs, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match try_filter_map_range::<T, std::convert::Infallible, _>(lo, hi, jobs, |n| Ok(f(n))) {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

#[cfg(feature = "parallel")]
fn parallel<T, E, F>(lo: u64, hi: u64, jobs: Jobs, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<Option<T>, E> + Sync + Send,
{
    use rayon::prelude::*;

    let run = || {
        (lo..=hi)
            .into_par_iter()
            .filter_map(|n| f(n).transpose())
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.get()).build() {
        Ok(pool) => pool.install(run),
        // Could not spawn a dedicated pool; the global one still preserves order.
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel<T, E, F>(lo: u64, hi: u64, _jobs: Jobs, f: F) -> Result<Vec<T>, E>
where
    F: Fn(u64) -> Result<Option<T>, E>,
{
    (lo..=hi).filter_map(|n| f(n).transpose()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_job_count() {
        let square_evens = |n: u64| (n % 2 == 0).then_some(n * n);
        let seq = filter_map_range(1, 10_000, Jobs::SEQUENTIAL, square_evens);
        let par = filter_map_range(1, 10_000, Jobs::new(8), square_evens);
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 5_000);
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_and_error_ranges() {
        assert!(filter_map_range(5, 4, Jobs::new(4), Some).is_empty());
        let r: Result<Vec<u64>, u64> =
            try_filter_map_range(1, 100, Jobs::new(4), |n| if n == 50 { Err(n) } else { Ok(Some(n)) });
        assert_eq!(r, Err(50));
    }

    #[test]
    fn zero_jobs_means_one() {
        assert_eq!(Jobs::new(0), Jobs::SEQUENTIAL);
    }
}
