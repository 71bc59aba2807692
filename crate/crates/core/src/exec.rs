//! Data-parallel map helpers. The `parallel` feature routes independent work
//! items (see-saw restarts, sweep points, batched constructions) through
//! rayon; without it everything runs sequentially. Output ordering is by
//! input index either way, so results are identical across both paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` sequentially.
pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Map `f` over `0..n` on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, in parallel when requested and compiled in.
pub fn map_indexed<U, F>(n: usize, parallel: bool, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return map_indexed_par(n, f);
        }
    }
    let _ = parallel;
    map_indexed_seq(n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let seq = map_indexed(100, false, |i| i * i);
        let par = map_indexed(100, true, |i| i * i);
        assert_eq!(seq, par);
    }
}
