use crate::allocation::Allocation;
use crate::traffic::PairwiseStats;

/// Inclusion-exclusion bounds on expected successes per frame from pairwise
/// statistics alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    /// Per user-slot terms clamped at zero.
    pub lower: f64,
    pub upper: f64,
    /// Sum of the lower-bound terms without clamping; may be negative.
    pub lower_unclamped: f64,
}

/// For user `n` in slot `k` with `t = A_nk E[x_n]`:
///
/// * upper term: `t - max_{m != n} A_nk A_mk E[x_n x_m]`
/// * lower term: `t - sum_{m != n} A_nk A_mk E[x_n x_m]`
pub fn throughput_bounds(stats: &PairwiseStats, allocation: &Allocation) -> BoundPair {
    assert_eq!(
        stats.len(),
        allocation.users(),
        "statistics and allocation disagree on N"
    );
    let mut bounds = BoundPair {
        lower: 0.0,
        upper: 0.0,
        lower_unclamped: 0.0,
    };
    for k in 0..allocation.slots() {
        let col = allocation.column(k);
        for &(n, an) in &col {
            let mut worst = 0.0f64;
            let mut total = 0.0;
            for &(m, am) in &col {
                if m != n {
                    let v = an * am * stats.pair(n, m);
                    worst = worst.max(v);
                    total += v;
                }
            }
            let single = an * stats.activity(n);
            bounds.upper += single - worst;
            bounds.lower_unclamped += single - total;
            bounds.lower += (single - total).max(0.0);
        }
    }
    bounds
}
