//! Data-parallel helpers for batch work: gallery suites, table rows,
//! pairwise Gram products and randomized corpora.
//!
//! With the `parallel` feature (default) the dispatching entry points run on
//! rayon; without it they fall back to sequential iteration. Results are
//! collected in input order either way, so output is deterministic and
//! independent of the execution strategy. The `_seq` variants are always
//! available, which lets benchmarks compare both strategies in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps over a slice, in parallel when enabled.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(items, f)
    }
}

/// Sequential reference implementation of [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Parallel implementation of [`map_collect`], available whenever the
/// `parallel` feature is on regardless of how callers dispatch.
#[cfg(feature = "parallel")]
pub fn map_collect_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Maps an index range `0..n`, in parallel when enabled.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..100).collect();
        let out = map_collect(&items, |x| x * x);
        let expected = map_collect_seq(&items, |x| x * x);
        assert_eq!(out, expected);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn par_and_seq_agree() {
        let items: Vec<u64> = (0..1000).collect();
        assert_eq!(
            map_collect_par(&items, |x| x + 1),
            map_collect_seq(&items, |x| x + 1)
        );
    }
}
