//! Instance-level parallelism helpers.
//!
//! All heavy operations in this crate are pure, so independent instances
//! (grid points, chain stages, Koszul strands, WLP lines) can fan out
//! freely. With the `parallel` feature (default) the work runs on rayon's
//! global pool, capped by the `SYMMID_THREADS` environment variable; the
//! sequential fallback compiles the same call sites without rayon.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which execution path to use for a batch. `Auto` means parallel whenever
/// the feature is compiled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Auto,
    Sequential,
}

/// Installs a global thread pool honoring `SYMMID_THREADS`. Call once from
/// binaries; later calls are ignored.
pub fn configure_threads() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(v) = std::env::var("SYMMID_THREADS") {
            if let Ok(k) = v.trim().parse::<usize>() {
                if k >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(k)
                        .build_global();
                }
            }
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Auto => {
            #[cfg(feature = "parallel")]
            {
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}
