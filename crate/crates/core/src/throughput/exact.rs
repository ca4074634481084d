use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::traffic::TrafficModel;

use super::{exactly_one, ThroughputReport};

/// Expected successes per frame by enumerating the model's joint distribution.
///
/// Given an activity pattern, users draw their slots independently, so slot
/// `k` succeeds with probability
/// `sum_n x_n A_nk prod_{m != n} (1 - x_m A_mk)`.
pub fn exact_throughput(
    model: &dyn TrafficModel,
    allocation: &Allocation,
) -> Result<ThroughputReport> {
    check_dims(model.user_count(), allocation)?;
    let joint = model.joint_distribution().ok_or_else(|| {
        Error::Capability("traffic model cannot enumerate its joint distribution".into())
    })?;
    let columns: Vec<Vec<(usize, f64)>> = (0..allocation.slots())
        .map(|k| allocation.column(k))
        .collect();
    let mut successes = 0.0;
    let mut arrivals = 0.0;
    for (weight, pattern) in &joint {
        let per_pattern: f64 = columns
            .iter()
            .map(|col| {
                exactly_one(
                    col.iter()
                        .filter(|(n, _)| pattern.active[*n])
                        .map(|&(_, a)| a),
                )
            })
            .sum();
        successes += weight * per_pattern;
        arrivals += weight * pattern.active_count() as f64;
    }
    let slots = allocation.slots();
    Ok(ThroughputReport {
        per_frame_successes: successes,
        per_slot_rate: successes / slots as f64,
        std_error: 0.0,
        frames_simulated: 0,
        mean_arrivals: arrivals,
        slots,
    })
}

pub(crate) fn check_dims(users: usize, allocation: &Allocation) -> Result<()> {
    if users != allocation.users() {
        return Err(Error::config(
            "allocation",
            format!("allocation has {} users, model {users}", allocation.users()),
        ));
    }
    Ok(())
}
