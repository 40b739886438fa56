//! Trial fan-out over a rayon pool. Results do not depend on the thread count.

use rayon::prelude::*;

use rgl_core::graph::Rational;
use rgl_core::spectrum::{run_trial, SpectrumError, SpectrumEstimate, SweepRow, Target};

/// `RGL_THREADS` if set to a positive integer, else the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("RGL_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool")
}

/// Parallel [`rgl_core::spectrum::estimate`]. On failure the error of the lowest trial index is returned.
pub fn estimate(target: &Target, alpha: Rational, n: usize, trials: u64, seed: u64, threads: usize) -> Result<SpectrumEstimate, SpectrumError> {
    let counted = pool(threads).install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(target, alpha, n, seed, i).map(u64::from).map_err(|e| (i, e)))
            .reduce(
                || Ok(0),
                |a, b| match (a, b) {
                    (Ok(x), Ok(y)) => Ok(x + y),
                    (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
                    (Err(e), Err(f)) => Err(if e.0 <= f.0 { e } else { f }),
                },
            )
    });
    let successes = counted.map_err(|(_, e)| e)?;
    Ok(SpectrumEstimate::from_counts(alpha, n, trials, successes, seed))
}

pub fn sweep(targets: &[Target], alphas: &[Rational], ns: &[usize], trials: u64, seed: u64, threads: usize) -> Result<Vec<SweepRow>, SpectrumError> {
    let mut rows = Vec::new();
    for t in targets {
        for &a in alphas {
            for &n in ns {
                rows.push(SweepRow::new(t, &estimate(t, a, n, trials, seed, threads)?));
            }
        }
    }
    Ok(rows)
}
