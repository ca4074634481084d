//! Slot allocation from pairwise activity statistics.
//!
//! An [`Allocation`] is the `N x K` matrix of slot-selection probabilities
//! conditioned on activity. Deterministic schemes produce a
//! [`SlotAssignment`] (one slot per user) that expands to a binary matrix.

mod cost;
mod greedy;
mod objective;
mod scaling;

pub use cost::{min_edge, CostMatrix};
pub use greedy::{greedy_allocate, greedy_merge, MergeOutcome, MergeRule};
pub use objective::{mmpc_objective, msum_objective};
pub use scaling::{scale_allocation, scale_allocation_with, ScalingOptions};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Row sums may exceed one by at most this much.
const ROW_SUM_SLACK: f64 = 1e-9;

/// Map from user to slot (0-based in memory; 1-based in text form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotAssignment {
    slot_of: Vec<usize>,
    slot_count: usize,
}

impl SlotAssignment {
    pub fn new(slot_of: Vec<usize>, slot_count: usize) -> Result<Self> {
        if slot_count == 0 {
            return Err(Error::config("slots", "slot count must be at least 1"));
        }
        if let Some(u) = slot_of.iter().position(|&s| s >= slot_count) {
            return Err(Error::config(
                "assignment",
                format!("user {u} mapped to slot {} of {slot_count}", slot_of[u]),
            ));
        }
        Ok(SlotAssignment {
            slot_of,
            slot_count,
        })
    }

    /// One user per slot; requires `users <= slots`.
    pub fn identity(users: usize, slots: usize) -> Result<Self> {
        if users > slots {
            return Err(Error::config(
                "slots",
                format!("{users} users do not fit in {slots} slots"),
            ));
        }
        Self::new((0..users).collect(), slots)
    }

    pub fn users(&self) -> usize {
        self.slot_of.len()
    }

    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    pub fn slot_of(&self, user: usize) -> usize {
        self.slot_of[user]
    }

    pub fn slots(&self) -> &[usize] {
        &self.slot_of
    }

    /// Users of every slot, in ascending user order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.slot_count];
        for (u, &s) in self.slot_of.iter().enumerate() {
            groups[s].push(u);
        }
        groups
    }
}

impl fmt::Display for SlotAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, &s) in self.slot_of.iter().enumerate() {
            writeln!(f, "{} {}", u + 1, s + 1)?;
        }
        Ok(())
    }
}

impl FromStr for SlotAssignment {
    type Err = Error;

    /// Parses `user slot` lines (1-based). The slot count is the largest slot
    /// index seen.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: no + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(parse_err(format!("expected `user slot`, found `{line}`")));
            }
            let index = |tok: &str| -> Result<usize> {
                match tok.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(parse_err(format!("`{tok}` is not a 1-based index"))),
                }
            };
            pairs.push((index(fields[0])?, index(fields[1])?));
        }
        let n = pairs.len();
        let mut slot_of = vec![usize::MAX; n];
        for &(u, s) in &pairs {
            if u >= n || slot_of[u] != usize::MAX {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("user {} missing or repeated", u + 1),
                });
            }
            slot_of[u] = s;
        }
        let slots = slot_of.iter().max().map_or(1, |m| m + 1);
        Self::new(slot_of, slots)
    }
}

/// `N x K` matrix of conditional slot-selection probabilities, row-major.
///
/// Rows of unscaled allocations sum to one. Scaled allocations may sum to
/// less; the remainder is the probability that an active user stays silent.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    users: usize,
    slots: usize,
    entries: Vec<f64>,
}

impl Allocation {
    pub fn new(users: usize, slots: usize, entries: Vec<f64>) -> Result<Self> {
        if users == 0 || slots == 0 {
            return Err(Error::config(
                "allocation",
                "needs at least one user and one slot",
            ));
        }
        if entries.len() != users * slots {
            return Err(Error::config(
                "allocation",
                format!("expected {} entries, got {}", users * slots, entries.len()),
            ));
        }
        if entries.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::config("allocation", "entries must lie in [0, 1]"));
        }
        for (n, row) in entries.chunks(slots).enumerate() {
            let sum: f64 = row.iter().sum();
            if sum > 1.0 + ROW_SUM_SLACK {
                return Err(Error::config(
                    "allocation",
                    format!("row {n} sums to {sum} > 1"),
                ));
            }
        }
        Ok(Allocation {
            users,
            slots,
            entries,
        })
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn get(&self, user: usize, slot: usize) -> f64 {
        self.entries[user * self.slots + slot]
    }

    pub fn row(&self, user: usize) -> &[f64] {
        &self.entries[user * self.slots..(user + 1) * self.slots]
    }

    pub fn row_sum(&self, user: usize) -> f64 {
        self.row(user).iter().sum()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&a| a == 0.0 || a == 1.0)
    }

    /// Users with non-zero probability for `slot`, with that probability.
    pub fn column(&self, slot: usize) -> Vec<(usize, f64)> {
        (0..self.users)
            .map(|n| (n, self.get(n, slot)))
            .filter(|&(_, a)| a > 0.0)
            .collect()
    }
}

/// Binary allocation with a single one per row at the assigned slot.
pub fn assignment_to_allocation(assignment: &SlotAssignment) -> Allocation {
    let (n, k) = (assignment.users(), assignment.slot_count());
    let mut entries = vec![0.0; n * k];
    for (u, &s) in assignment.slots().iter().enumerate() {
        entries[u * k + s] = 1.0;
    }
    Allocation {
        users: n,
        slots: k,
        entries,
    }
}

/// Framed slotted ALOHA: every user picks each slot with probability `1/K`.
pub fn uniform_allocation(users: usize, slots: usize) -> Result<Allocation> {
    if users == 0 || slots == 0 {
        return Err(Error::config(
            "slots",
            "needs at least one user and one slot",
        ));
    }
    Ok(Allocation {
        users,
        slots,
        entries: vec![1.0 / slots as f64; users * slots],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_expansion() {
        let s = SlotAssignment::new(vec![0, 0, 0, 1], 2).unwrap();
        let a = assignment_to_allocation(&s);
        let rows: Vec<&[f64]> = (0..4).map(|u| a.row(u)).collect();
        assert_eq!(
            rows,
            vec![&[1.0, 0.0][..], &[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]
        );
        assert!(a.is_binary());
    }

    #[test]
    fn identity_expands_to_identity_matrix() {
        let a = assignment_to_allocation(&SlotAssignment::identity(3, 3).unwrap());
        for u in 0..3 {
            for k in 0..3 {
                assert_eq!(a.get(u, k), if u == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn single_slot_is_all_ones_column() {
        let a = assignment_to_allocation(&SlotAssignment::new(vec![0; 5], 1).unwrap());
        assert!((0..5).all(|u| a.get(u, 0) == 1.0));
        let u = uniform_allocation(5, 1).unwrap();
        assert!((0..5).all(|n| u.get(n, 0) == 1.0));
    }

    #[test]
    fn uniform_rows() {
        let a = uniform_allocation(2, 2).unwrap();
        assert!((0..2).all(|n| a.row(n) == [0.5, 0.5]));
        let a = uniform_allocation(1000, 150).unwrap();
        assert!((0..1000).all(|n| a.row(n).iter().all(|&v| v == 1.0 / 150.0)));
        assert!((a.row_sum(999) - 1.0).abs() < 1e-12);
        assert!(uniform_allocation(0, 3).is_err());
    }

    #[test]
    fn assignment_text_round_trip() {
        let s = SlotAssignment::new(vec![1, 0, 2, 0], 3).unwrap();
        assert_eq!(s.to_string(), "1 2\n2 1\n3 3\n4 1\n");
        assert_eq!(s.to_string().parse::<SlotAssignment>().unwrap(), s);
        assert!("1 1\n1 2\n".parse::<SlotAssignment>().is_err());
        assert!("0 1\n".parse::<SlotAssignment>().is_err());
    }

    #[test]
    fn allocation_validation() {
        assert!(Allocation::new(1, 2, vec![0.6, 0.6]).is_err());
        assert!(Allocation::new(1, 2, vec![-0.1, 0.6]).is_err());
        assert!(Allocation::new(1, 2, vec![0.2, 0.3]).is_ok());
    }
}
