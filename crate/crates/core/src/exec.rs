//! Execution mode for the batch loops of the crate.
//!
//! Pairwise inclusion checks, separator searches and the top level of the
//! brute-force memory search are embarrassingly parallel. With the `parallel`
//! feature they run on the rayon pool; without it, [`Exec::Parallel`] silently
//! degrades to the sequential path. Results never depend on the mode.

/// How a batch of independent jobs is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when jobs will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `(0..n).map(f).collect()`, in index order regardless of mode.
pub(crate) fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Index of the first job (lowest index) for which `f` returns `Some`.
pub(crate) fn find_first<R, F>(exec: Exec, n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = map_range(Exec::Sequential, 100, |i| i * i);
        let par = map_range(Exec::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
        let f = |i: usize| (i > 10 && i % 7 == 0).then_some(i);
        assert_eq!(find_first(Exec::Sequential, 100, f), Some(14));
        assert_eq!(find_first(Exec::Parallel, 100, f), Some(14));
    }
}
