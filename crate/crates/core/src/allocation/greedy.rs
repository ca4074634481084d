//! Greedy vertex merging on the cost graph.
//!
//! Every user starts as its own vertex. The cheapest edge `(i, j)` is merged
//! repeatedly (vertex `i` into vertex `j`) until `K` vertices remain; each
//! remaining vertex becomes one slot.
//!
//! Each vertex caches the cheapest edge in its row. A merge only removes
//! column `i` and rewrites column `j`, so only rows whose cached edge touched
//! `i` or `j` need a rescan. Picking the next edge is then a scan over the
//! surviving vertices.

use std::str::FromStr;

use crate::error::{Error, Result};

use super::{CostMatrix, SlotAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MergeRule {
    /// Min-Max: the merged edge keeps the worse of the two edges,
    /// `C_jn = max(C_ni, C_nj)`.
    #[default]
    Max,
    /// Min-Sum: `C_jn = C_ij + C_ni + C_nj`, which adds the internal edge
    /// of the merged pair on every merge.
    Sum,
    /// Strict cross-group sum `C_jn = C_ni + C_nj`.
    CrossSum,
}

impl MergeRule {
    fn merged(self, internal: f64, to_removed: f64, to_survivor: f64) -> f64 {
        match self {
            MergeRule::Max => to_removed.max(to_survivor),
            MergeRule::Sum => internal + to_removed + to_survivor,
            MergeRule::CrossSum => to_removed + to_survivor,
        }
    }
}

impl FromStr for MergeRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(MergeRule::Max),
            "sum" => Ok(MergeRule::Sum),
            "cross_sum" => Ok(MergeRule::CrossSum),
            other => Err(Error::config(
                "merge_rule",
                format!("unknown rule `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct RowMin {
    value: f64,
    col: usize,
}

struct MergeState {
    n: usize,
    weights: Vec<f64>,
    alive: Vec<usize>,
    is_alive: Vec<bool>,
    best: Vec<RowMin>,
}

impl MergeState {
    fn new(cost: &CostMatrix) -> Self {
        let n = cost.len();
        let mut state = MergeState {
            n,
            weights: cost.entries().to_vec(),
            alive: (0..n).collect(),
            is_alive: vec![true; n],
            best: vec![
                RowMin {
                    value: f64::INFINITY,
                    col: usize::MAX
                };
                n
            ],
        };
        for v in 0..n {
            state.rescan(v);
        }
        state
    }

    fn w(&self, a: usize, b: usize) -> f64 {
        self.weights[a * self.n + b]
    }

    fn set_w(&mut self, a: usize, b: usize, v: f64) {
        self.weights[a * self.n + b] = v;
        self.weights[b * self.n + a] = v;
    }

    /// Smallest entry in row `v` over surviving columns, first column on ties.
    fn rescan(&mut self, v: usize) {
        let row = &self.weights[v * self.n..(v + 1) * self.n];
        let mut best = RowMin {
            value: f64::INFINITY,
            col: usize::MAX,
        };
        for &c in &self.alive {
            if c != v && (row[c] < best.value || best.col == usize::MAX) {
                best = RowMin {
                    value: row[c],
                    col: c,
                };
            }
        }
        self.best[v] = best;
    }

    /// The cheapest edge; the first row holding the global minimum gives the
    /// lexicographically smallest pair.
    fn cheapest(&self) -> Option<(usize, usize)> {
        let mut pick: Option<(f64, usize)> = None;
        for &v in &self.alive {
            let b = self.best[v];
            if b.col == usize::MAX {
                continue;
            }
            if pick.is_none_or(|(value, _)| b.value < value) {
                pick = Some((b.value, v));
            }
        }
        pick.map(|(_, v)| (v, self.best[v].col))
    }

    fn merge(&mut self, removed: usize, survivor: usize, rule: MergeRule) {
        let internal = self.w(removed, survivor);
        for idx in 0..self.alive.len() {
            let other = self.alive[idx];
            if other == removed || other == survivor {
                continue;
            }
            let v = rule.merged(internal, self.w(other, removed), self.w(other, survivor));
            self.set_w(other, survivor, v);
        }
        self.is_alive[removed] = false;
        self.alive.retain(|&v| v != removed);

        self.rescan(survivor);
        for idx in 0..self.alive.len() {
            let other = self.alive[idx];
            if other == survivor {
                continue;
            }
            let cached = self.best[other];
            if cached.col == removed || cached.col == survivor {
                self.rescan(other);
            } else {
                let v = self.w(other, survivor);
                if v < cached.value || (v == cached.value && survivor < cached.col) {
                    self.best[other] = RowMin {
                        value: v,
                        col: survivor,
                    };
                }
            }
        }
    }
}

/// Result of the greedy merge: the assignment plus the edge weights left
/// between the surviving groups.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeOutcome {
    pub assignment: SlotAssignment,
    /// Row-major `G x G` weights between surviving groups, ordered like the
    /// slots (`G = min(N, K)`); the diagonal is `+inf`.
    pub group_edges: Vec<f64>,
    /// `(removed, survivor)` vertex pairs in merge order, as original user
    /// indices of the vertices.
    pub merges: Vec<(usize, usize)>,
}

/// Greedy slot assignment by repeated cheapest-edge merging.
///
/// Slots are numbered by the smallest user index in each group. With
/// `K >= N` no merge happens and user `u` gets slot `u`.
pub fn greedy_allocate(cost: &CostMatrix, slots: usize, rule: MergeRule) -> Result<SlotAssignment> {
    greedy_merge(cost, slots, rule).map(|o| o.assignment)
}

/// [`greedy_allocate`] that also reports the merge history.
pub fn greedy_merge(cost: &CostMatrix, slots: usize, rule: MergeRule) -> Result<MergeOutcome> {
    if slots == 0 {
        return Err(Error::config("slots", "slot count must be at least 1"));
    }
    let n = cost.len();
    if n == 0 {
        return Err(Error::config("users", "cost matrix is empty"));
    }
    let mut state = MergeState::new(cost);
    let mut members: Vec<Vec<usize>> = (0..n).map(|u| vec![u]).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(slots));

    while state.alive.len() > slots {
        let Some((i, j)) = state.cheapest() else {
            break;
        };
        state.merge(i, j, rule);
        merges.push((i, j));
        let moved = std::mem::take(&mut members[i]);
        members[j].extend(moved);
    }

    let mut vertices = state.alive.clone();
    vertices.sort_by_key(|&v| members[v].iter().min().copied());
    let mut slot_of = vec![0; n];
    for (slot, &v) in vertices.iter().enumerate() {
        for &u in &members[v] {
            slot_of[u] = slot;
        }
    }
    let group_edges = vertices
        .iter()
        .flat_map(|&a| vertices.iter().map(move |&b| (a, b)))
        .map(|(a, b)| if a == b { f64::INFINITY } else { state.w(a, b) })
        .collect();
    Ok(MergeOutcome {
        assignment: SlotAssignment::new(slot_of, slots)?,
        group_edges,
        merges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::min_edge;

    fn cost(n: usize, pairs: &[(usize, usize, f64)]) -> CostMatrix {
        let mut e = vec![0.0; n * n];
        for &(i, j, v) in pairs {
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
        CostMatrix::new(n, e).unwrap()
    }

    /// Edge weights of the first four-user repeating-pattern example.
    fn left_example() -> CostMatrix {
        cost(
            4,
            &[
                (0, 1, 0.25),
                (0, 2, 0.25),
                (0, 3, 0.5),
                (1, 2, 0.25),
                (1, 3, 0.5),
                (2, 3, 0.5),
            ],
        )
    }

    fn right_example() -> CostMatrix {
        let third = 1.0 / 3.0;
        cost(
            4,
            &[
                (0, 1, 0.0),
                (0, 2, third),
                (0, 3, 0.5),
                (1, 2, third),
                (1, 3, third),
                (2, 3, 0.5),
            ],
        )
    }

    #[test]
    fn left_example_groups() {
        let mm = greedy_allocate(&left_example(), 2, MergeRule::Max).unwrap();
        assert_eq!(mm.groups(), vec![vec![0, 1, 2], vec![3]]);
        let ms = greedy_allocate(&left_example(), 2, MergeRule::Sum).unwrap();
        assert_eq!(ms.groups(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn right_example_groups() {
        assert_eq!(min_edge(&right_example()).unwrap(), (0, 1));
        let mm = greedy_allocate(&right_example(), 2, MergeRule::Max).unwrap();
        assert_eq!(mm.groups(), vec![vec![0, 1, 2], vec![3]]);
        let ms = greedy_allocate(&right_example(), 2, MergeRule::Sum).unwrap();
        assert_eq!(ms.groups(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn enough_slots_means_identity() {
        for k in [4, 5, 10] {
            let s = greedy_allocate(&left_example(), k, MergeRule::Max).unwrap();
            assert_eq!(s.slots(), &[0, 1, 2, 3]);
            assert_eq!(s.slot_count(), k);
        }
    }

    #[test]
    fn single_slot_takes_everyone() {
        let s = greedy_allocate(&left_example(), 1, MergeRule::Sum).unwrap();
        assert_eq!(s.slots(), &[0, 0, 0, 0]);
    }

    #[test]
    fn zero_slots_rejected() {
        assert!(matches!(
            greedy_allocate(&left_example(), 0, MergeRule::Max),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn merged_edge_values() {
        assert_eq!(MergeRule::Max.merged(0.3, 0.1, 0.2), 0.2);
        assert_eq!(MergeRule::Sum.merged(0.3, 0.1, 0.1), 0.5);
        assert_eq!(MergeRule::CrossSum.merged(0.3, 0.1, 0.1), 0.2);
    }

    #[test]
    fn cross_sum_ignores_internal_mass() {
        // {0,1} merges first (internal cost 0.1). Against vertex 2 the merged
        // vertex costs 0.4 under Sum but 0.3 under CrossSum; edge (2,3) is 0.35.
        let c = cost(
            4,
            &[
                (0, 1, 0.1),
                (0, 2, 0.15),
                (1, 2, 0.15),
                (0, 3, 0.5),
                (1, 3, 0.5),
                (2, 3, 0.35),
            ],
        );
        let sum = greedy_allocate(&c, 2, MergeRule::Sum).unwrap();
        let cross = greedy_allocate(&c, 2, MergeRule::CrossSum).unwrap();
        assert_eq!(sum.groups(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(cross.groups(), vec![vec![0, 1, 2], vec![3]]);
    }
}
