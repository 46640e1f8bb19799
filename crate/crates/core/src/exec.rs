use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the data-parallel kernels are scheduled.
///
/// Every kernel produces bit-identical results under both strategies: work is
/// split into independent items whose results are collected in input order,
/// and the only cross-item reduction is `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    pub(crate) fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    pub(crate) fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => range.map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
        }
    }

    /// Maximum of `f` over `range`, `0.0` when empty. NaN propagates.
    pub(crate) fn max_range<F>(self, range: Range<usize>, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        match self {
            Execution::Sequential => range.map(f).fold(0.0, nan_max),
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).reduce(|| 0.0, nan_max),
        }
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
