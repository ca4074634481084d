//! Transmission-probability scaling.
//!
//! Within a slot group, an active user `i` expects
//! `E[N_i] = A_i + sum_{n != i} A_n E[x_n x_i] / E[x_i]` transmissions in its
//! slot. The heuristic picks `A` in `[0, 1]^g` minimising
//! `sum_i (E[N_i] - 1)^2`, a box-constrained linear least-squares problem
//! `min ||M A - 1||^2` solved by projected gradient descent.

use crate::error::{Error, Result};
use crate::traffic::PairwiseStats;

use super::{Allocation, SlotAssignment};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingOptions {
    /// Stop once an iteration lowers the objective by less than this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Leave users with zero activity probability out of the least-squares
    /// problem (their value is irrelevant) instead of failing.
    pub skip_inactive: bool,
}

impl Default for ScalingOptions {
    fn default() -> Self {
        ScalingOptions {
            tolerance: 1e-9,
            max_iterations: 10_000,
            skip_inactive: false,
        }
    }
}

/// Scales a deterministic assignment with the default options.
pub fn scale_allocation(assignment: &SlotAssignment, stats: &PairwiseStats) -> Result<Allocation> {
    scale_allocation_with(assignment, stats, &ScalingOptions::default())
}

pub fn scale_allocation_with(
    assignment: &SlotAssignment,
    stats: &PairwiseStats,
    options: &ScalingOptions,
) -> Result<Allocation> {
    let (n, k) = (assignment.users(), assignment.slot_count());
    if stats.len() != n {
        return Err(Error::config(
            "stats",
            format!("statistics cover {} users, assignment {n}", stats.len()),
        ));
    }
    let mut entries = vec![0.0; n * k];
    for (slot, group) in assignment.groups().into_iter().enumerate() {
        let mut solve_for = Vec::with_capacity(group.len());
        for &u in &group {
            if stats.activity(u) > 0.0 {
                solve_for.push(u);
            } else if group.len() > 1 && !options.skip_inactive {
                return Err(Error::Estimation(format!(
                    "user {u} has zero activity probability in a shared slot"
                )));
            } else {
                entries[u * k + slot] = 1.0;
            }
        }
        let values = if solve_for.len() <= 1 {
            vec![1.0; solve_for.len()]
        } else {
            let problem = SlotProblem::new(&solve_for, stats);
            problem.solve(options)
        };
        for (&u, v) in solve_for.iter().zip(values) {
            entries[u * k + slot] = v;
        }
    }
    Allocation::new(n, k, entries)
}

/// `min ||M a - 1||^2` over `a` in `[0, 1]^g`.
#[derive(Debug, Clone)]
pub(crate) struct SlotProblem {
    g: usize,
    /// Row `i`: `M_ii = 1`, `M_in = E[x_n x_i] / E[x_i]`.
    m: Vec<f64>,
}

impl SlotProblem {
    pub(crate) fn new(users: &[usize], stats: &PairwiseStats) -> Self {
        let g = users.len();
        let mut m = vec![0.0; g * g];
        for (a, &i) in users.iter().enumerate() {
            let pi = stats.activity(i);
            for (b, &j) in users.iter().enumerate() {
                m[a * g + b] = if a == b { 1.0 } else { stats.pair(j, i) / pi };
            }
        }
        SlotProblem { g, m }
    }

    pub(crate) fn objective(&self, a: &[f64]) -> f64 {
        (0..self.g)
            .map(|i| {
                let r: f64 = self.m[i * self.g..(i + 1) * self.g]
                    .iter()
                    .zip(a)
                    .map(|(m, x)| m * x)
                    .sum::<f64>()
                    - 1.0;
                r * r
            })
            .sum()
    }

    fn residual(&self, a: &[f64], out: &mut [f64]) {
        for (i, r) in out.iter_mut().enumerate() {
            *r = self.m[i * self.g..(i + 1) * self.g]
                .iter()
                .zip(a)
                .map(|(m, x)| m * x)
                .sum::<f64>()
                - 1.0;
        }
    }

    /// Gershgorin bound on the largest eigenvalue of `2 M^T M`, the
    /// gradient's Lipschitz constant.
    fn lipschitz(&self) -> f64 {
        let g = self.g;
        let mut mtm = vec![0.0; g * g];
        for r in 0..g {
            for c in 0..g {
                mtm[r * g + c] = (0..g).map(|i| self.m[i * g + r] * self.m[i * g + c]).sum();
            }
        }
        let row_max = (0..g)
            .map(|r| mtm[r * g..(r + 1) * g].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        2.0 * row_max
    }

    pub(crate) fn solve(&self, options: &ScalingOptions) -> Vec<f64> {
        let g = self.g;
        let step = 1.0 / self.lipschitz();
        let mut a = vec![1.0; g];
        let mut residual = vec![0.0; g];
        let mut grad = vec![0.0; g];
        let mut value = self.objective(&a);
        for _ in 0..options.max_iterations {
            self.residual(&a, &mut residual);
            for (c, gc) in grad.iter_mut().enumerate() {
                *gc = 2.0 * (0..g).map(|i| self.m[i * g + c] * residual[i]).sum::<f64>();
            }
            for (x, gx) in a.iter_mut().zip(&grad) {
                *x = (*x - step * gx).clamp(0.0, 1.0);
            }
            let next = self.objective(&a);
            let improvement = value - next;
            value = next;
            if improvement <= options.tolerance {
                break;
            }
        }
        a
    }
}
