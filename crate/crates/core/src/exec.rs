//! Order-preserving fan-out of independent evaluations.

/// Runs a map over a slice either sequentially or on a rayon pool.
///
/// Output order always matches input order, so results are identical
/// regardless of the worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Executor {
    workers: usize,
}

impl Default for Executor {
    fn default() -> Self {
        Executor::new(0)
    }
}

impl Executor {
    /// `workers == 0` picks the rayon default, `1` is strictly sequential.
    pub fn new(workers: usize) -> Self {
        Executor { workers }
    }

    pub fn sequential() -> Self {
        Executor { workers: 1 }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.workers != 1
    }

    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.workers != 1 {
            use rayon::prelude::*;
            if self.workers == 0 {
                return items.par_iter().map(f).collect();
            }
            if let Ok(pool) = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
            {
                return pool.install(|| items.par_iter().map(&f).collect());
            }
        }
        items.iter().map(f).collect()
    }
}
