use crate::error::{Error, Result};

/// Absorbs rounding in `lambda - 1` and `lambda / 2`.
const FEASIBILITY_SLACK: f64 = 1e-12;

/// Best slot count for two users with `lambda` expected transmissions per
/// frame and joint activity probability `p11`.
///
/// With `p = lambda/2 - p11` the per-slot throughput is
/// `TP(K) = (2p + 2 p11 [K > 1]) / K`. Returns the better `K` in `{1, 2}`
/// (ties keep one slot) and its throughput.
pub fn two_user_optimal(lambda: f64, p11: f64) -> Result<(usize, f64)> {
    if !(0.0..=2.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in [0, 2]"
        )));
    }
    // p00 = 1 - 2p - p11 = 1 - lambda + p11 >= 0.
    let lowest = (lambda - 1.0).max(0.0);
    if !(p11 >= lowest - FEASIBILITY_SLACK && p11 <= lambda / 2.0 + FEASIBILITY_SLACK) {
        return Err(Error::Domain(format!(
            "p11 = {p11} is infeasible for lambda = {lambda}; need {lowest} <= p11 <= {}",
            lambda / 2.0
        )));
    }
    let p = lambda / 2.0 - p11;
    let one = 2.0 * p;
    let two = (2.0 * p + 2.0 * p11) / 2.0;
    Ok(if two > one { (2, two) } else { (1, one) })
}

/// Per-slot throughput with a fixed slot count.
pub(crate) fn two_user_throughput(lambda: f64, p11: f64, slots: usize) -> f64 {
    let p = lambda / 2.0 - p11;
    let both = if slots > 1 { 2.0 * p11 } else { 0.0 };
    (2.0 * p + both) / slots as f64
}
