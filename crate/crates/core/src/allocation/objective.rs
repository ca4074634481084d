//! Pairwise surrogate objectives.

use crate::traffic::PairwiseStats;

use super::Allocation;

/// Min-Max objective: for every slot, the largest
/// `A_nk A_mk E[x_n x_m]` over unordered user pairs, summed over slots.
pub fn mmpc_objective(allocation: &Allocation, stats: &PairwiseStats) -> f64 {
    (0..allocation.slots())
        .map(|k| {
            let col = allocation.column(k);
            let mut worst = 0.0f64;
            for (a, &(n, an)) in col.iter().enumerate() {
                for &(m, am) in &col[a + 1..] {
                    worst = worst.max(an * am * stats.pair(n, m));
                }
            }
            worst
        })
        .sum()
}

/// Min-Sum objective: `(1/K) sum_k sum_{n != m} A_nk A_mk E[x_n x_m]` over
/// ordered pairs.
pub fn msum_objective(allocation: &Allocation, stats: &PairwiseStats) -> f64 {
    let total: f64 = (0..allocation.slots())
        .map(|k| {
            let col = allocation.column(k);
            let mut sum = 0.0;
            for (a, &(n, an)) in col.iter().enumerate() {
                for &(m, am) in &col[a + 1..] {
                    sum += 2.0 * an * am * stats.pair(n, m);
                }
            }
            sum
        })
        .sum();
    total / allocation.slots() as f64
}
