use rand::{Rng, RngCore};

use crate::error::{Error, Result};

use super::{FrameActivity, PairwiseStats, TrafficModel, MAX_ENUMERATED_USERS};

/// Users active independently, user `i` with probability `p[i]`.
#[derive(Debug, Clone)]
pub struct IndependentModel {
    probabilities: Vec<f64>,
}

impl IndependentModel {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::config(
                "probabilities",
                "at least one user is required",
            ));
        }
        if let Some(i) = probabilities.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::config(
                "probabilities",
                format!("entry {i} = {} is not in [0, 1]", probabilities[i]),
            ));
        }
        Ok(IndependentModel { probabilities })
    }

    pub fn homogeneous(users: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; users])
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

impl TrafficModel for IndependentModel {
    fn user_count(&self) -> usize {
        self.probabilities.len()
    }

    fn sample_into(&self, _frame_index: u64, rng: &mut dyn RngCore, active: &mut [bool]) {
        for (a, &p) in active.iter_mut().zip(&self.probabilities) {
            *a = rng.random::<f64>() < p;
        }
    }

    fn exact_stats(&self) -> Option<PairwiseStats> {
        let p = &self.probabilities;
        let n = p.len();
        let second = (0..n * n).map(|k| p[k / n] * p[k % n]).collect();
        PairwiseStats::from_parts_unchecked(p.clone(), second).ok()
    }

    fn joint_distribution(&self) -> Option<Vec<(f64, FrameActivity)>> {
        let n = self.probabilities.len();
        if n > MAX_ENUMERATED_USERS {
            return None;
        }
        Some(
            (0u32..(1 << n))
                .map(|mask| {
                    let active: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    let w = active
                        .iter()
                        .zip(&self.probabilities)
                        .map(|(&a, &p)| if a { p } else { 1.0 - p })
                        .product();
                    (w, FrameActivity::new(active))
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::from_seed;

    #[test]
    fn product_stats() {
        let stats = IndependentModel::new(vec![0.5, 0.5])
            .unwrap()
            .exact_stats()
            .unwrap();
        assert_eq!(stats.pair(0, 1), 0.25);
        assert_eq!(stats.activity(1), 0.5);
    }

    #[test]
    fn two_user_independent_case() {
        // lambda = 1 expected transmissions split over two users.
        let lambda = 1.0;
        let model = IndependentModel::new(vec![lambda / 2.0; 2]).unwrap();
        let p11 = model.exact_stats().unwrap().pair(0, 1);
        assert_eq!(p11, (lambda / 2.0) * (lambda / 2.0));
    }

    #[test]
    fn zero_probabilities_are_silent() {
        let model = IndependentModel::homogeneous(5, 0.0).unwrap();
        let mut rng = from_seed(3);
        assert!((0..100).all(|t| model.sample_frame(t, &mut rng).active_count() == 0));
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        assert!(IndependentModel::new(vec![0.5, 1.5]).is_err());
        assert!(IndependentModel::new(vec![-0.1]).is_err());
        assert!(IndependentModel::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn enumeration_sums_to_one() {
        let model = IndependentModel::new(vec![0.1, 0.7, 0.4]).unwrap();
        let joint = model.joint_distribution().unwrap();
        assert_eq!(joint.len(), 8);
        let total: f64 = joint.iter().map(|(w, _)| w).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }
}
