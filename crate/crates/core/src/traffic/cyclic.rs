//! Repeating activity patterns.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

use super::{FrameActivity, PairwiseStats, TrafficModel};

/// `T` activity vectors over `N` users, repeated indefinitely.
///
/// Text form: one frame per line, `N` space-separated `0`/`1` digits. Blank
/// lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPattern {
    users: usize,
    frames: Vec<FrameActivity>,
}

impl CyclicPattern {
    pub fn new(frames: Vec<FrameActivity>) -> Result<Self> {
        let users = match frames.first() {
            Some(f) => f.len(),
            None => return Err(Error::config("pattern", "pattern has no frames")),
        };
        if users == 0 {
            return Err(Error::config("pattern", "pattern has no users"));
        }
        if let Some(t) = frames.iter().position(|f| f.len() != users) {
            return Err(Error::config(
                "pattern",
                format!(
                    "frame {} has {} users, expected {users}",
                    t + 1,
                    frames[t].len()
                ),
            ));
        }
        Ok(CyclicPattern { users, frames })
    }

    /// Builds a pattern from per-user rows, i.e. `rows[user][frame]`.
    pub fn from_user_rows(rows: &[&[u8]]) -> Result<Self> {
        let t = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::config("pattern", "user rows differ in length"));
        }
        let frames = (0..t)
            .map(|f| FrameActivity::new(rows.iter().map(|r| r[f] != 0).collect()))
            .collect();
        Self::new(frames)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config(
                "pattern_file",
                format!("cannot read {}: {e}", path.display()),
            )
        })?;
        text.parse()
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn period(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[FrameActivity] {
        &self.frames
    }
}

impl FromStr for CyclicPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut frames = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let active = line
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(Error::Parse {
                        line: no + 1,
                        message: format!("expected 0 or 1, found `{other}`"),
                    }),
                })
                .collect::<Result<Vec<bool>>>()?;
            frames.push(FrameActivity::new(active));
        }
        Self::new(frames)
    }
}

impl fmt::Display for CyclicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for frame in &self.frames {
            let row: Vec<&str> = frame
                .active
                .iter()
                .map(|&a| if a { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CyclicSampling {
    /// Frame `t` is column `t mod T`.
    #[default]
    Cycle,
    /// Each frame is a uniformly drawn column.
    Uniform,
}

#[derive(Debug, Clone)]
pub struct CyclicModel {
    pattern: CyclicPattern,
    sampling: CyclicSampling,
}

impl CyclicModel {
    pub fn new(pattern: CyclicPattern, sampling: CyclicSampling) -> Self {
        CyclicModel { pattern, sampling }
    }

    pub fn pattern(&self) -> &CyclicPattern {
        &self.pattern
    }
}

impl TrafficModel for CyclicModel {
    fn user_count(&self) -> usize {
        self.pattern.users
    }

    fn sample_into(&self, frame_index: u64, rng: &mut dyn RngCore, active: &mut [bool]) {
        let t = match self.sampling {
            CyclicSampling::Cycle => (frame_index % self.pattern.period() as u64) as usize,
            CyclicSampling::Uniform => rng.random_range(0..self.pattern.period()),
        };
        active.copy_from_slice(&self.pattern.frames[t].active);
    }

    fn exact_stats(&self) -> Option<PairwiseStats> {
        // Observing one full period is exhaustive.
        super::empirical_pair_stats(&self.pattern.frames).ok()
    }

    fn joint_distribution(&self) -> Option<Vec<(f64, FrameActivity)>> {
        let w = 1.0 / self.pattern.period() as f64;
        Some(self.pattern.frames.iter().map(|f| (w, f.clone())).collect())
    }
}
