//! Throughput evaluation under the collision channel: a slot succeeds iff
//! exactly one user transmits in it.

mod bounds;
mod exact;
mod simulate;
pub(crate) mod two_user;

pub use bounds::{throughput_bounds, BoundPair};
pub use exact::exact_throughput;
pub use simulate::{simulate, SIMULATION_CHUNK};
pub use two_user::two_user_optimal;

/// Throughput of one allocation on one traffic model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputReport {
    /// Expected successful slots per frame.
    pub per_frame_successes: f64,
    /// `per_frame_successes / K`.
    pub per_slot_rate: f64,
    /// Monte Carlo standard error of `per_frame_successes`; zero when exact.
    pub std_error: f64,
    /// Zero for exact evaluation.
    pub frames_simulated: u64,
    /// Mean number of active users per frame.
    pub mean_arrivals: f64,
    pub slots: usize,
}

impl ThroughputReport {
    pub const CSV_HEADER: &'static str = "scheme,K,lambda,per_frame,per_slot,stderr,frames";

    /// `scheme,K,lambda,per_frame,per_slot,stderr,frames`.
    pub fn csv_row(&self, scheme: &str, lambda: Option<f64>) -> String {
        format!(
            "{scheme},{},{},{:.9},{:.9},{:.9},{}",
            self.slots,
            lambda.map(|l| format!("{l:.9e}")).unwrap_or_default(),
            self.per_frame_successes,
            self.per_slot_rate,
            self.std_error,
            self.frames_simulated
        )
    }
}

/// Probability that exactly one of the given independent transmitters fires.
pub(crate) fn exactly_one(probabilities: impl Iterator<Item = f64>) -> f64 {
    let mut certain = 0usize;
    let mut prod_rest = 1.0;
    let mut odds = 0.0;
    for a in probabilities {
        if a >= 1.0 {
            certain += 1;
            if certain > 1 {
                return 0.0;
            }
        } else {
            prod_rest *= 1.0 - a;
            odds += a / (1.0 - a);
        }
    }
    if certain == 1 {
        prod_rest
    } else {
        prod_rest * odds
    }
}
