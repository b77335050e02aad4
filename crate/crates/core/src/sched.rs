//! Dynamic chunk scheduling on a rayon pool.
//!
//! Every worker of the pool repeatedly claims the next `chunk` indices from a
//! shared counter until the range is exhausted, mirroring an OpenMP
//! `schedule(dynamic, chunk)` loop. With a single worker the chunks are
//! visited in increasing order.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::ThreadPool;

/// Runs `body` over `0..len` in chunks and returns one accumulator per worker.
pub(crate) fn for_each_chunk<A, I, F>(
    pool: &ThreadPool,
    len: usize,
    chunk: usize,
    init: I,
    body: F,
) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(Range<usize>, &mut A) + Sync,
{
    debug_assert!(chunk > 0);
    let next = AtomicUsize::new(0);
    let work = || {
        let mut acc = init();
        loop {
            let start = next.fetch_add(chunk, Ordering::Relaxed);
            if start >= len {
                break;
            }
            body(start..(start + chunk).min(len), &mut acc);
        }
        acc
    };
    if pool.current_num_threads() == 1 {
        return vec![pool.install(work)];
    }
    pool.broadcast(|_| work())
}
