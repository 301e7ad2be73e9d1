//! Worker-pool plumbing.  The CLI owns the pool; modules receive it and run
//! parallel maps whose output order matches the input order, so results are
//! independent of scheduling.

use rayon::prelude::*;

/// A parallel-map capability handed down from the binary.
pub struct Pool {
    inner: Option<rayon::ThreadPool>,
}

impl Pool {
    /// `threads = 0` or `1` runs serially.
    pub fn new(threads: usize) -> Pool {
        if threads <= 1 {
            return Pool { inner: None };
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        Pool { inner: Some(pool) }
    }

    pub fn serial() -> Pool {
        Pool { inner: None }
    }

    pub fn threads(&self) -> usize {
        self.inner.as_ref().map_or(1, |p| p.current_num_threads())
    }

    /// Order-preserving parallel map.
    pub fn map<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match &self.inner {
            None => items.into_iter().map(f).collect(),
            Some(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        }
    }

    /// Order-preserving parallel map over index chunks 0..n.
    pub fn map_range<U, F>(&self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match &self.inner {
            None => (0..n).map(f).collect(),
            Some(pool) => pool.install(|| (0..n).into_par_iter().map(f).collect()),
        }
    }
}

impl Default for Pool {
    fn default() -> Self {
        Pool::serial()
    }
}

/// Deterministic pairwise summation: fixed reduction tree independent of
/// thread schedule, and more accurate than a running sum.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let pool = Pool::new(4);
        let out = pool.map((0..1000).collect::<Vec<_>>(), |x| x * 2);
        assert_eq!(out, (0..1000).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn pairwise_sum_deterministic() {
        let xs: Vec<f64> = (0..1001).map(|i| (i as f64).sin()).collect();
        let a = pairwise_sum(&xs);
        let b = pairwise_sum(&xs);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
