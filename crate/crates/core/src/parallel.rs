//! Run-level parallelism.
//!
//! With the `parallel` feature, independent tasks run on a rayon pool of
//! the requested size; without it they run one after another. Results come
//! back in input order either way.

#[cfg(feature = "parallel")]
pub fn map_tasks<T, R, F>(tasks: &[T], workers: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    match workers {
        Some(1) => tasks.iter().map(f).collect(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("failed to build worker pool")
            .install(|| tasks.par_iter().map(&f).collect()),
        None => tasks.par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_tasks<T, R, F>(tasks: &[T], _workers: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    tasks.iter().map(f).collect()
}
