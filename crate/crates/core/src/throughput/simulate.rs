//! Monte Carlo throughput estimation.
//!
//! Frames are cut into fixed chunks of [`SIMULATION_CHUNK`]. Chunk `c` draws
//! activity from ChaCha stream `2c` and slot choices from stream `2c + 1` of a
//! root seed taken from the caller's generator. Chunks run in parallel and
//! their moments are merged in chunk order, so the report is bit-identical for
//! any thread count. Sharing the root seed between two allocations also
//! shares their activity frames.

use rand::{Rng, RngCore};
use rayon::prelude::*;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::traffic::TrafficModel;

use super::exact::check_dims;
use super::ThroughputReport;

pub const SIMULATION_CHUNK: u64 = 256;

/// Per-user slot choice, conditioned on activity.
enum Choice {
    Never,
    Always(usize),
    /// Cumulative probabilities over the non-zero slots; anything past the
    /// last entry is silence.
    Random(Vec<(f64, usize)>),
}

fn choices(allocation: &Allocation) -> Vec<Choice> {
    (0..allocation.users())
        .map(|n| {
            let nonzero: Vec<(usize, f64)> = allocation
                .row(n)
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0.0)
                .map(|(k, &a)| (k, a))
                .collect();
            match nonzero.as_slice() {
                [] => Choice::Never,
                [(k, a)] if *a >= 1.0 => Choice::Always(*k),
                _ => {
                    let mut acc = 0.0;
                    Choice::Random(
                        nonzero
                            .iter()
                            .map(|&(k, a)| {
                                acc += a;
                                (acc, k)
                            })
                            .collect(),
                    )
                }
            }
        })
        .collect()
}

/// Streaming mean / variance (Welford) with Chan's pairwise merge.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
    arrivals: f64,
}

impl Moments {
    fn push(&mut self, x: f64, arrivals: usize) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
        self.arrivals += arrivals as f64;
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        Moments {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
            arrivals: self.arrivals + other.arrivals,
        }
    }
}

fn run_chunk(
    model: &dyn TrafficModel,
    choices: &[Choice],
    slots: usize,
    root: u64,
    chunk: u64,
    frames: std::ops::Range<u64>,
) -> Moments {
    let mut activity_rng = substream(root, 2 * chunk);
    let mut choice_rng = substream(root, 2 * chunk + 1);
    let mut active = vec![false; model.user_count()];
    let mut load = vec![0u32; slots];
    let mut touched = Vec::new();
    let mut moments = Moments::default();
    for frame in frames {
        model.sample_into(frame, &mut activity_rng, &mut active);
        let mut arrivals = 0;
        for (n, _) in active.iter().enumerate().filter(|(_, &a)| a) {
            arrivals += 1;
            let slot = match &choices[n] {
                Choice::Never => None,
                Choice::Always(k) => Some(*k),
                Choice::Random(cdf) => {
                    let u: f64 = choice_rng.random();
                    cdf.iter().find(|(c, _)| u < *c).map(|&(_, k)| k)
                }
            };
            if let Some(k) = slot {
                if load[k] == 0 {
                    touched.push(k);
                }
                load[k] += 1;
            }
        }
        let successes = touched.iter().filter(|&&k| load[k] == 1).count();
        for &k in &touched {
            load[k] = 0;
        }
        touched.clear();
        moments.push(successes as f64, arrivals);
    }
    moments
}

/// Simulates `frames` frames of `model` with slots drawn from `allocation`.
pub fn simulate(
    model: &dyn TrafficModel,
    allocation: &Allocation,
    frames: u64,
    rng: &mut dyn RngCore,
) -> Result<ThroughputReport> {
    if frames == 0 {
        return Err(Error::config(
            "frames",
            "at least one frame must be simulated",
        ));
    }
    check_dims(model.user_count(), allocation)?;
    let root = rng.next_u64();
    let slots = allocation.slots();
    let choices = choices(allocation);
    let chunks = frames.div_ceil(SIMULATION_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * SIMULATION_CHUNK;
            let end = (start + SIMULATION_CHUNK).min(frames);
            run_chunk(model, &choices, slots, root, c, start..end)
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);

    let n = total.count as f64;
    let variance = if total.count > 1 {
        total.m2 / (n - 1.0)
    } else {
        0.0
    };
    Ok(ThroughputReport {
        per_frame_successes: total.mean,
        per_slot_rate: total.mean / slots as f64,
        std_error: (variance.max(0.0) / n).sqrt(),
        frames_simulated: total.count,
        mean_arrivals: total.arrivals / n,
        slots,
    })
}
