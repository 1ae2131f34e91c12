//! Sequential / data-parallel execution switch.
//!
//! With the `parallel` feature disabled, [`Strategy::Parallel`] silently runs
//! sequentially so callers never need their own `cfg`.

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
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    // splitting work across a one-thread pool only adds overhead
    #[cfg(feature = "parallel")]
    fn use_rayon(self) -> bool {
        self.is_parallel() && rayon::current_num_threads() > 1
    }

    /// Order-preserving map.
    pub(crate) fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_rayon() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `range`.
    pub(crate) fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_rayon() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// `fold` over `range` followed by an associative `combine` of the partial
    /// results. `identity` must be neutral for `combine`.
    pub(crate) fn fold_range<A, Id, F, C>(
        self,
        range: std::ops::Range<usize>,
        min_len: usize,
        identity: Id,
        fold: F,
        combine: C,
    ) -> A
    where
        A: Send,
        Id: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.use_rayon() && range.len() >= 2 * min_len.max(1) {
            return range
                .into_par_iter()
                .with_min_len(min_len.max(1))
                .fold(&identity, &fold)
                .reduce(&identity, &combine);
        }
        let _ = (&combine, min_len);
        range.fold(identity(), fold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(s.map(&items, |x| x * 2)[999], 1998);
            assert_eq!(s.map_range(0..5, |x| x), vec![0, 1, 2, 3, 4]);
            let total = s.fold_range(0..1000, 16, || 0u64, |a, i| a + i as u64, |a, b| a + b);
            assert_eq!(total, 499_500);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn multi_thread_pool_matches_sequential() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        pool.install(|| {
            assert!(Strategy::Parallel.use_rayon());
            let table = crate::counting::score_counts_with(300, Strategy::Parallel).unwrap();
            let seq = crate::counting::score_counts_with(300, Strategy::Sequential).unwrap();
            assert_eq!(table, seq);
            let total = Strategy::Parallel.fold_range(
                0..1000,
                16,
                || 0u64,
                |a, i| a + i as u64,
                |a, b| a + b,
            );
            assert_eq!(total, 499_500);
        });
    }
}
