//! Execution strategy for per-fixed-point sums.
//!
//! With the `parallel` feature, folds run on rayon unless sequential mode is
//! selected at runtime. Without it, everything is sequential. Reductions are
//! exact integer sums, so results do not depend on the schedule.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::Result;

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Environment variable capping the worker count; `0` means sequential.
pub const THREADS_ENV: &str = "LOCPROJ_THREADS";

pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::SeqCst)
}

/// Applies a worker cap: `Some(0)` selects sequential mode, `Some(k)` sizes
/// the global pool (first call wins), `None` keeps the defaults.
pub fn set_threads(threads: Option<usize>) {
    match threads {
        Some(0) => set_sequential(true),
        Some(_k) => {
            set_sequential(false);
            #[cfg(feature = "parallel")]
            {
                // The pool may already exist; the cap then stays as it was.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(_k).build_global();
            }
        }
        None => {}
    }
}

/// Reads [`THREADS_ENV`]; unparsable values are ignored.
pub fn configure_from_env() {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    set_threads(cap);
}

/// Folds `items` into accumulators and merges them.
pub fn try_fold_reduce<T, A, I, F, R>(items: &[T], identity: I, fold: F, reduce: R) -> Result<A>
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &T) -> Result<A> + Sync + Send,
    R: Fn(A, A) -> Result<A> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items
            .par_iter()
            .try_fold(&identity, &fold)
            .try_reduce(&identity, &reduce);
    }
    let _ = &reduce;
    items.iter().try_fold(identity(), fold)
}

/// Maps in parallel (when enabled), preserving order.
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}
