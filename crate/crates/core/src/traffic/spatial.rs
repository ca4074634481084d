//! Spatio-temporal Poisson event model.
//!
//! Events fall on the region `[0, L]^2` as a homogeneous Poisson point process
//! with intensity `event_rate` per unit area per frame. A user is active in a
//! frame iff at least one event of that frame lies within the activation
//! radius of its position.

use std::f64::consts::PI;

use rand::{Rng, RngCore};
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};

use super::geometry::{disk_intersection_area, Point, UserLocations};
use super::{PairwiseStats, TrafficModel};

#[derive(Debug, Clone)]
pub struct SpatioTemporalModel {
    locations: UserLocations,
    event_rate: f64,
    grid: UserGrid,
}

impl SpatioTemporalModel {
    pub fn new(locations: UserLocations, event_rate: f64) -> Result<Self> {
        if !event_rate.is_finite() || event_rate < 0.0 {
            return Err(Error::config(
                "lambda",
                format!("event rate must be finite and >= 0, got {event_rate}"),
            ));
        }
        let grid = UserGrid::new(&locations);
        Ok(SpatioTemporalModel {
            locations,
            event_rate,
            grid,
        })
    }

    pub fn locations(&self) -> &UserLocations {
        &self.locations
    }

    pub fn event_rate(&self) -> f64 {
        self.event_rate
    }

    /// Mean number of events per frame, `lambda * L^2`.
    pub fn mean_events(&self) -> f64 {
        let side = self.locations.region_side();
        self.event_rate * side * side
    }

    /// Activation probability of every user, `1 - exp(-lambda pi r^2)`.
    pub fn activation_probability(&self) -> f64 {
        let r = self.locations.radius();
        1.0 - (-self.event_rate * PI * r * r).exp()
    }
}

impl TrafficModel for SpatioTemporalModel {
    fn user_count(&self) -> usize {
        self.locations.len()
    }

    fn sample_into(&self, _frame_index: u64, rng: &mut dyn RngCore, active: &mut [bool]) {
        active.fill(false);
        let mean = self.mean_events();
        let radius = self.locations.radius();
        if mean <= 0.0 || radius <= 0.0 {
            return;
        }
        let events = Poisson::new(mean)
            .expect("positive finite mean")
            .sample(rng) as u64;
        let side = self.locations.region_side();
        for _ in 0..events {
            let event = Point::new(rng.random::<f64>() * side, rng.random::<f64>() * side);
            self.grid
                .for_each_within(&self.locations, event, radius, |u| active[u] = true);
        }
    }

    fn exact_stats(&self) -> Option<PairwiseStats> {
        Some(analytic_pair_stats(self, PairFormula::Exact))
    }
}

/// Which closed form to use for `E[x_i x_j]` of overlapping users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairFormula {
    /// `p_I + (1 - p_I) (1 - exp(-lambda (pi r^2 - D)))^2` for `d < 2r`.
    #[default]
    Exact,
    /// The published expression: overlap case only for `d < r`, and no
    /// `(1 - p_I)` factor on the exclusive-regions term. Kept for comparison;
    /// the result can violate the joint probability bounds.
    Printed,
}

/// Closed-form activity statistics of a spatio-temporal model.
///
/// Two users are both active iff an event falls in their lens of area `D`, or,
/// failing that, each exclusive part of their disks receives an event. The
/// three regions are disjoint, so their Poisson counts are independent.
pub fn analytic_pair_stats(model: &SpatioTemporalModel, formula: PairFormula) -> PairwiseStats {
    let locs = model.locations();
    let n = locs.len();
    let r = locs.radius();
    let rate = model.event_rate();
    let disk = PI * r * r;
    let p = model.activation_probability();
    let threshold = match formula {
        PairFormula::Exact => 2.0 * r,
        PairFormula::Printed => r,
    };

    let mut second = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = locs.distance(i, j);
            let v = if d >= threshold {
                p * p
            } else {
                let lens = disk_intersection_area(d, r);
                let p_lens = 1.0 - (-rate * lens).exp();
                let exclusive = 1.0 - (-rate * (disk - lens)).exp();
                match formula {
                    PairFormula::Exact => p_lens + (1.0 - p_lens) * exclusive * exclusive,
                    PairFormula::Printed => p_lens + exclusive * exclusive,
                }
            };
            second[i * n + j] = v;
            second[j * n + i] = v;
        }
    }
    PairwiseStats::from_parts_unchecked(vec![p; n], second).expect("dimensions agree")
}

/// Uniform bucket grid over user positions for radius queries.
#[derive(Debug, Clone)]
struct UserGrid {
    cell: f64,
    cols: usize,
    buckets: Vec<Vec<usize>>,
}

impl UserGrid {
    fn new(locations: &UserLocations) -> Self {
        let side = locations.region_side();
        let r = locations.radius();
        let cols = if r > 0.0 {
            ((side / r).floor() as usize).clamp(1, 256)
        } else {
            1
        };
        let cell = side / cols as f64;
        let mut buckets = vec![Vec::new(); cols * cols];
        for (u, p) in locations.positions().iter().enumerate() {
            let (cx, cy) = (Self::coord(p.x, cell, cols), Self::coord(p.y, cell, cols));
            buckets[cy * cols + cx].push(u);
        }
        UserGrid {
            cell,
            cols,
            buckets,
        }
    }

    fn coord(v: f64, cell: f64, cols: usize) -> usize {
        ((v / cell).floor().max(0.0) as usize).min(cols - 1)
    }

    fn for_each_within(
        &self,
        locations: &UserLocations,
        centre: Point,
        radius: f64,
        mut visit: impl FnMut(usize),
    ) {
        let lo_x = Self::coord(centre.x - radius, self.cell, self.cols);
        let hi_x = Self::coord(centre.x + radius, self.cell, self.cols);
        let lo_y = Self::coord(centre.y - radius, self.cell, self.cols);
        let hi_y = Self::coord(centre.y + radius, self.cell, self.cols);
        let positions = locations.positions();
        let r2 = radius * radius;
        for cy in lo_y..=hi_y {
            for cx in lo_x..=hi_x {
                for &u in &self.buckets[cy * self.cols + cx] {
                    let p = positions[u];
                    let (dx, dy) = (p.x - centre.x, p.y - centre.y);
                    if dx * dx + dy * dy <= r2 {
                        visit(u);
                    }
                }
            }
        }
    }
}
