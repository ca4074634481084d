use rand::{Rng, RngCore};

use crate::error::{Error, Result};

use super::{FrameActivity, PairwiseStats, TrafficModel, MAX_ENUMERATED_USERS};

/// Explicit joint distribution over all `2^N` activity patterns.
///
/// Entry `mask` is the probability that exactly the users whose bits are set
/// in `mask` (bit `i` for user `i`) are active.
#[derive(Debug, Clone)]
pub struct JointTable {
    users: usize,
    probabilities: Vec<f64>,
    cumulative: Vec<f64>,
}

impl JointTable {
    /// Accepts non-negative weights and normalises them.
    pub fn new(users: usize, weights: Vec<f64>) -> Result<Self> {
        if users == 0 || users > MAX_ENUMERATED_USERS {
            return Err(Error::config(
                "users",
                format!("joint tables support 1..={MAX_ENUMERATED_USERS} users, got {users}"),
            ));
        }
        if weights.len() != 1 << users {
            return Err(Error::config(
                "weights",
                format!(
                    "expected {} entries, got {}",
                    1usize << users,
                    weights.len()
                ),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::config("weights", "weights must be finite and >= 0"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::config("weights", "weights sum to zero"));
        }
        let probabilities: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut acc = 0.0;
        let cumulative = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(JointTable {
            users,
            probabilities,
            cumulative,
        })
    }

    pub fn probability(&self, mask: usize) -> f64 {
        self.probabilities[mask]
    }

    fn pattern(&self, mask: usize) -> FrameActivity {
        FrameActivity::new((0..self.users).map(|i| mask >> i & 1 == 1).collect())
    }
}

impl TrafficModel for JointTable {
    fn user_count(&self) -> usize {
        self.users
    }

    fn sample_into(&self, _frame_index: u64, rng: &mut dyn RngCore, active: &mut [bool]) {
        let u = rng.random::<f64>() * self.cumulative[self.cumulative.len() - 1];
        let mask = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.probabilities.len() - 1);
        for (i, a) in active.iter_mut().enumerate() {
            *a = mask >> i & 1 == 1;
        }
    }

    fn exact_stats(&self) -> Option<PairwiseStats> {
        let n = self.users;
        let mut first = vec![0.0; n];
        let mut second = vec![0.0; n * n];
        for (mask, &w) in self.probabilities.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    continue;
                }
                first[i] += w;
                for j in (i + 1)..n {
                    if mask >> j & 1 == 1 {
                        second[i * n + j] += w;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                second[j * n + i] = second[i * n + j];
            }
        }
        PairwiseStats::from_parts_unchecked(first, second).ok()
    }

    fn joint_distribution(&self) -> Option<Vec<(f64, FrameActivity)>> {
        Some(
            self.probabilities
                .iter()
                .enumerate()
                .filter(|(_, &w)| w > 0.0)
                .map(|(mask, &w)| (w, self.pattern(mask)))
                .collect(),
        )
    }
}
