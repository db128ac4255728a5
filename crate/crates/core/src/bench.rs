//! Wall-clock comparison of the fast transform against the direct sum.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::group::Group;
use crate::random::{random_function, seeded_rng};
use crate::transform::Side;
use crate::{Error, Result};

/// The direct sum is skipped above this size.
pub const NAIVE_LIMIT: usize = 4096;
pub const MAX_BENCH_SIZE: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub size: usize,
    pub reps: usize,
    pub fft_median: Duration,
    pub naive_median: Option<Duration>,
    /// Sum of the fast transform's output; identical across runs with the
    /// same seed.
    pub checksum: Complex64,
}

impl BenchResult {
    pub fn speedup(&self) -> Option<f64> {
        self.naive_median
            .map(|naive| naive.as_secs_f64() / self.fft_median.as_secs_f64().max(1e-12))
    }
}

pub fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    let n = samples.len();
    if n == 0 {
        Duration::ZERO
    } else if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

/// Times `reps` forward transforms of one seeded random function, and the
/// direct sum as well when the group is at most [`NAIVE_LIMIT`] in size.
pub fn run(group: &Group, reps: usize, seed: u64) -> Result<BenchResult> {
    let size = group.size();
    if size > MAX_BENCH_SIZE {
        return Err(Error::GroupTooLarge { size, limit: MAX_BENCH_SIZE });
    }
    let reps = reps.max(1);
    let f = random_function(group, Side::Primal, &mut seeded_rng(seed));
    // build the plan outside the timed region
    let mut checksum = f.fft_forward()?.values().iter().sum();

    let mut fft_times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let out = f.fft_forward()?;
        fft_times.push(start.elapsed());
        checksum = out.values().iter().sum();
    }
    let naive_median = if size <= NAIVE_LIMIT {
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            std::hint::black_box(f.dft_naive()?);
            times.push(start.elapsed());
        }
        Some(median(times))
    } else {
        None
    };
    Ok(BenchResult {
        size,
        reps,
        fft_median: median(fft_times),
        naive_median,
        checksum,
    })
}
