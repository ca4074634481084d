use crate::error::{Error, Result};

use super::FrameActivity;

/// Slack allowed when checking probability invariants on computed values.
const TOLERANCE: f64 = 1e-9;

/// First-order activity probabilities `E[x_i]` and pairwise product
/// expectations `E[x_i x_j]`.
///
/// The second-order matrix is stored dense and row-major; its diagonal holds
/// `E[x_i x_i] = E[x_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseStats {
    first: Vec<f64>,
    second: Vec<f64>,
}

impl PairwiseStats {
    /// Builds and validates statistics from a first-order vector and a
    /// row-major `N x N` second-order matrix (diagonal ignored).
    pub fn new(first_order: Vec<f64>, second_order: Vec<f64>) -> Result<Self> {
        let stats = Self::from_parts_unchecked(first_order, second_order)?;
        stats.validate()?;
        Ok(stats)
    }

    /// Like [`new`](Self::new) but only checks dimensions. Used for the
    /// printed-formula compatibility mode, which can break the joint
    /// probability bounds.
    pub fn from_parts_unchecked(first_order: Vec<f64>, mut second_order: Vec<f64>) -> Result<Self> {
        let n = first_order.len();
        if n == 0 {
            return Err(Error::Estimation(
                "statistics need at least one user".into(),
            ));
        }
        if second_order.len() != n * n {
            return Err(Error::Estimation(format!(
                "second-order matrix has {} entries, expected {}",
                second_order.len(),
                n * n
            )));
        }
        for i in 0..n {
            second_order[i * n + i] = first_order[i];
        }
        Ok(PairwiseStats {
            first: first_order,
            second: second_order,
        })
    }

    /// Checks range, symmetry and the Fréchet bounds
    /// `max(0, p_i + p_j - 1) <= E[x_i x_j] <= min(p_i, p_j)`.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for (i, &p) in self.first.iter().enumerate() {
            if !(-TOLERANCE..=1.0 + TOLERANCE).contains(&p) {
                return Err(Error::Estimation(format!(
                    "E[x_{i}] = {p} is not a probability"
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.pair(i, j);
                let w = self.pair(j, i);
                if (v - w).abs() > TOLERANCE {
                    return Err(Error::Estimation(format!(
                        "E[x_{i} x_{j}] not symmetric ({v} vs {w})"
                    )));
                }
                let (pi, pj) = (self.first[i], self.first[j]);
                let upper = pi.min(pj);
                let lower = (pi + pj - 1.0).max(0.0);
                if v > upper + TOLERANCE || v < lower - TOLERANCE {
                    return Err(Error::Estimation(format!(
                        "E[x_{i} x_{j}] = {v} outside [{lower}, {upper}]"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn first_order(&self) -> &[f64] {
        &self.first
    }

    pub fn activity(&self, i: usize) -> f64 {
        self.first[i]
    }

    /// `E[x_i x_j]`; for `i == j` this is `E[x_i]`.
    pub fn pair(&self, i: usize, j: usize) -> f64 {
        self.second[i * self.len() + j]
    }

    /// Row `i` of the second-order matrix.
    pub fn pair_row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.second[i * n..(i + 1) * n]
    }

    /// Expected number of active users per frame.
    pub fn mean_active(&self) -> f64 {
        self.first.iter().sum()
    }

    /// Statistics of the users in `users`, in that order.
    pub fn restrict(&self, users: &[usize]) -> PairwiseStats {
        let first: Vec<f64> = users.iter().map(|&u| self.first[u]).collect();
        let mut second = Vec::with_capacity(users.len() * users.len());
        for &a in users {
            for &b in users {
                second.push(self.pair(a, b));
            }
        }
        PairwiseStats { first, second }
    }
}

/// Sample means of single and pairwise co-activity over observed frames.
pub fn empirical_pair_stats<'a, I>(frames: I) -> Result<PairwiseStats>
where
    I: IntoIterator<Item = &'a FrameActivity>,
{
    let mut iter = frames.into_iter().peekable();
    let n = match iter.peek() {
        Some(f) => f.len(),
        None => return Err(Error::Estimation("no frames observed".into())),
    };
    let mut single = vec![0u64; n];
    let mut joint = vec![0u64; n * n];
    let mut count = 0u64;
    let mut active = Vec::with_capacity(n);
    for frame in iter {
        if frame.len() != n {
            return Err(Error::Estimation(format!(
                "frame {count} has {} users, expected {n}",
                frame.len()
            )));
        }
        active.clear();
        active.extend(frame.active_users());
        for (a, &i) in active.iter().enumerate() {
            single[i] += 1;
            for &j in &active[a + 1..] {
                joint[i * n + j] += 1;
            }
        }
        count += 1;
    }
    let total = count as f64;
    let first: Vec<f64> = single.iter().map(|&c| c as f64 / total).collect();
    let mut second = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = joint[i * n + j] as f64 / total;
            second[i * n + j] = v;
            second[j * n + i] = v;
        }
    }
    PairwiseStats::from_parts_unchecked(first, second)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(bits: &[u8]) -> FrameActivity {
        FrameActivity::new(bits.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn single_all_ones_frame() {
        let stats = empirical_pair_stats(&[frame(&[1, 1, 1])]).unwrap();
        for i in 0..3 {
            assert_eq!(stats.activity(i), 1.0);
            for j in 0..3 {
                assert_eq!(stats.pair(i, j), 1.0);
            }
        }
    }

    #[test]
    fn empty_sequence_is_an_error() {
        let frames: Vec<FrameActivity> = Vec::new();
        assert!(matches!(
            empirical_pair_stats(&frames),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn ragged_frames_are_rejected() {
        assert!(empirical_pair_stats(&[frame(&[1, 0]), frame(&[1])]).is_err());
    }

    #[test]
    fn frechet_violation_is_rejected() {
        // p = (0.9, 0.9) forces E[x1 x2] >= 0.8.
        let err = PairwiseStats::new(vec![0.9, 0.9], vec![0.0, 0.5, 0.5, 0.0]);
        assert!(err.is_err());
        let err = PairwiseStats::new(vec![0.2, 0.9], vec![0.0, 0.3, 0.3, 0.0]);
        assert!(err.is_err());
        let err = PairwiseStats::new(vec![0.5, 0.5], vec![0.0, 0.2, 0.3, 0.0]);
        assert!(err.is_err());
        assert!(PairwiseStats::new(vec![0.5, 0.5], vec![0.0, 0.25, 0.25, 0.0]).is_ok());
    }

    #[test]
    fn restriction_keeps_order() {
        let stats = PairwiseStats::new(
            vec![0.5, 0.4, 0.3],
            vec![0.0, 0.1, 0.2, 0.1, 0.0, 0.05, 0.2, 0.05, 0.0],
        )
        .unwrap();
        let sub = stats.restrict(&[2, 0]);
        assert_eq!(sub.first_order(), &[0.3, 0.5]);
        assert_eq!(sub.pair(0, 1), 0.2);
    }
}
