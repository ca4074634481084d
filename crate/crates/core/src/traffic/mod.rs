//! Correlated user-activity models and pairwise activity statistics.

mod cyclic;
mod geometry;
mod independent;
mod joint;
mod spatial;
mod stats;

pub use cyclic::{CyclicModel, CyclicPattern, CyclicSampling};
pub use geometry::{deploy_users, disk_intersection_area, Point, UserLocations};
pub use independent::IndependentModel;
pub use joint::JointTable;
pub use spatial::{analytic_pair_stats, PairFormula, SpatioTemporalModel};
pub use stats::{empirical_pair_stats, PairwiseStats};

use rand::RngCore;

/// Largest user count for which joint enumeration over all `2^N` activity
/// patterns is offered.
pub const MAX_ENUMERATED_USERS: usize = 20;

/// Activity of every user in one frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameActivity {
    pub active: Vec<bool>,
}

impl FrameActivity {
    pub fn new(active: Vec<bool>) -> Self {
        FrameActivity { active }
    }

    pub fn inactive(users: usize) -> Self {
        FrameActivity {
            active: vec![false; users],
        }
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn active_users(&self) -> impl Iterator<Item = usize> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
    }
}

/// A source of per-frame activity vectors.
///
/// Frames are indexed so that deterministic models (repeating patterns) can be
/// sampled in parallel without shared state; stochastic models ignore the index
/// and draw only from `rng`.
pub trait TrafficModel: Sync {
    fn user_count(&self) -> usize;

    /// Writes the activity of frame `frame_index` into `active`
    /// (length [`user_count`](Self::user_count)).
    fn sample_into(&self, frame_index: u64, rng: &mut dyn RngCore, active: &mut [bool]);

    fn sample_frame(&self, frame_index: u64, rng: &mut dyn RngCore) -> FrameActivity {
        let mut frame = FrameActivity::inactive(self.user_count());
        self.sample_into(frame_index, rng, &mut frame.active);
        frame
    }

    /// Exact first/second order statistics, when the model knows them.
    fn exact_stats(&self) -> Option<PairwiseStats> {
        None
    }

    /// Every activity pattern with its probability, when the model can
    /// enumerate its joint distribution.
    fn joint_distribution(&self) -> Option<Vec<(f64, FrameActivity)>> {
        None
    }
}
