use rayon::prelude::*;

use crate::error::{CliError, CliResult};

pub const THREADS_VAR: &str = "FRACLAP_THREADS";

/// Worker count from `FRACLAP_THREADS`; unset or 0 lets rayon decide.
pub fn thread_count() -> CliResult<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "{THREADS_VAR} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(0),
    }
}

/// `f` over `items` on the configured pool. Each item is computed on its
/// own, so the output does not depend on scheduling.
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> CliResult<Vec<U>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}
