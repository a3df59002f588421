//! Parallel iteration with a sequential fallback.
//!
//! With the `parallel` feature this re-exports rayon. Without it the same
//! method names resolve to plain iterators so call sites compile unchanged.

#[cfg(feature = "parallel")]
pub use rayon::prelude::{IntoParallelRefIterator, ParallelIterator};

#[cfg(not(feature = "parallel"))]
pub use self::fallback::{IntoParallelRefIterator, ParallelIterator};

#[cfg(not(feature = "parallel"))]
mod fallback {
    pub use std::iter::Iterator as ParallelIterator;

    pub trait IntoParallelRefIterator<'data> {
        type Item;
        type Iter: Iterator<Item = Self::Item>;
        fn par_iter(&'data self) -> Self::Iter;
    }

    impl<'data, I: 'data + ?Sized> IntoParallelRefIterator<'data> for I
    where
        &'data I: IntoIterator,
    {
        type Item = <&'data I as IntoIterator>::Item;
        type Iter = <&'data I as IntoIterator>::IntoIter;
        fn par_iter(&'data self) -> Self::Iter {
            self.into_iter()
        }
    }
}

/// How grid work is scheduled. Results never depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool, or a dedicated pool of `threads` workers.
    #[default]
    Parallel,
    Threads(usize),
}

impl Execution {
    pub fn from_threads(threads: Option<usize>) -> Self {
        match threads {
            None | Some(0) => Execution::Parallel,
            Some(1) => Execution::Sequential,
            Some(n) => Execution::Threads(n),
        }
    }
}

/// Maps `f` over `items` under `exec`, preserving input order.
pub fn map_ordered<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => items.par_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.par_iter().map(f).collect(),
        },
        #[cfg(not(feature = "parallel"))]
        Execution::Threads(_) => items.iter().map(f).collect(),
    }
}
