//! Worker-pool sizing. Every parallel routine in the crate reduces in a fixed
//! block order, so results do not depend on the number of workers.

use std::env;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "LINNIK_THREADS";

/// Worker count from `LINNIK_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Runs `f` inside a dedicated rayon pool with `threads` workers.
///
/// `None` falls back to `LINNIK_THREADS`, then to rayon's global pool.
pub fn with_threads<T, F>(threads: Option<usize>, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match threads.or_else(threads_from_env) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}
