//! Data-parallel inner loops with a sequential fallback.
//!
//! With the default `parallel` feature the helpers fan out over rayon's
//! current pool; without it they run in plain loops. Outputs are collected
//! in index order and cross-item reductions stick to exact integer sums,
//! so results are bit-identical for any thread count, including one.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
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

/// Like [`map_range`], with a per-worker scratch value built by `init`.
pub(crate) fn map_range_with<S, T, I, F>(n: usize, init: I, f: F) -> Vec<T>
where
    S: Send,
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map_init(init, |scratch, i| f(scratch, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut scratch = init();
        (0..n).map(|i| f(&mut scratch, i)).collect()
    }
}

/// Accumulate per-item `u64` contributions into a shared-length vector.
/// `f` receives a scratch value and must add its item's contributions into
/// the accumulator slice. Integer addition commutes exactly, so the result
/// does not depend on work splitting.
pub(crate) fn accumulate_u64<S, I, F>(items: usize, len: usize, init: I, f: F) -> Vec<u64>
where
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &mut [u64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..items)
            .into_par_iter()
            .fold(
                || (init(), vec![0u64; len]),
                |(mut scratch, mut acc), i| {
                    f(&mut scratch, i, &mut acc);
                    (scratch, acc)
                },
            )
            .map(|(_, acc)| acc)
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut scratch = init();
        let mut acc = vec![0u64; len];
        for i in 0..items {
            f(&mut scratch, i, &mut acc);
        }
        acc
    }
}
