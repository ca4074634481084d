//! The two four-user repeating-pattern examples.

use std::fmt::Write as _;

use crate::allocation::{
    assignment_to_allocation, greedy_allocate, CostMatrix, MergeRule, SlotAssignment,
};
use crate::error::Result;
use crate::throughput::exact_throughput;
use crate::traffic::{CyclicModel, CyclicPattern, CyclicSampling, TrafficModel};

/// Four frames where Min-Max beats Min-Sum. Rows are users.
pub fn fig3_left_pattern() -> CyclicPattern {
    CyclicPattern::from_user_rows(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1], &[1, 1, 1, 1]])
        .expect("static pattern")
}

/// Six frames where Min-Sum beats Min-Max.
pub fn fig3_right_pattern() -> CyclicPattern {
    CyclicPattern::from_user_rows(&[
        &[1, 0, 1, 0, 1, 0],
        &[0, 1, 0, 1, 0, 1],
        &[1, 1, 1, 1, 0, 0],
        &[1, 1, 1, 0, 1, 1],
    ])
    .expect("static pattern")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Row {
    pub example: &'static str,
    pub rule: MergeRule,
    pub assignment: SlotAssignment,
    pub tp_per_frame: f64,
}

impl Fig3Row {
    /// Slot groups with 1-based users, e.g. `1 2 3|4`.
    pub fn groups_label(&self) -> String {
        self.assignment
            .groups()
            .iter()
            .map(|g| {
                g.iter()
                    .map(|u| (u + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Both examples under both merge rules with `K = 2`, evaluated exactly.
pub fn reproduce_fig3() -> Result<Vec<Fig3Row>> {
    let mut rows = Vec::new();
    for (example, pattern) in [
        ("left", fig3_left_pattern()),
        ("right", fig3_right_pattern()),
    ] {
        let model = CyclicModel::new(pattern, CyclicSampling::Cycle);
        let stats = model
            .exact_stats()
            .expect("cyclic models know their statistics");
        let cost = CostMatrix::from_stats(&stats);
        for rule in [MergeRule::Max, MergeRule::Sum] {
            let assignment = greedy_allocate(&cost, 2, rule)?;
            let report = exact_throughput(&model, &assignment_to_allocation(&assignment))?;
            rows.push(Fig3Row {
                example,
                rule,
                assignment,
                tp_per_frame: report.per_frame_successes,
            });
        }
    }
    Ok(rows)
}

pub fn fig3_csv(rows: &[Fig3Row]) -> String {
    let mut out = String::from("example,scheme,slot_groups,tp_per_frame\n");
    for r in rows {
        let scheme = match r.rule {
            MergeRule::Max => "minmax",
            MergeRule::Sum => "minsum",
            MergeRule::CrossSum => "cross_sum",
        };
        let _ = writeln!(
            out,
            "{},{},{},{:.12}",
            r.example,
            scheme,
            r.groups_label(),
            r.tp_per_frame
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_weights_match_graphs() {
        let left = CyclicModel::new(fig3_left_pattern(), CyclicSampling::Cycle)
            .exact_stats()
            .unwrap();
        assert_eq!(left.pair(0, 1), 0.25);
        assert_eq!(left.pair(0, 3), 0.5);
        assert_eq!(left.pair(2, 3), 0.5);
        let right = CyclicModel::new(fig3_right_pattern(), CyclicSampling::Cycle)
            .exact_stats()
            .unwrap();
        assert_eq!(right.pair(0, 1), 0.0);
        assert_eq!(right.pair(0, 3), 0.5);
        assert!((right.pair(1, 2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn throughputs() {
        let rows = reproduce_fig3().unwrap();
        let tp: Vec<f64> = rows.iter().map(|r| r.tp_per_frame).collect();
        let want = [7.0 / 4.0, 1.0, 7.0 / 6.0, 9.0 / 6.0];
        for (got, want) in tp.iter().zip(want) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert_eq!(rows[0].groups_label(), "1 2 3|4");
        assert_eq!(rows[1].groups_label(), "1 2|3 4");
        assert!(fig3_csv(&rows).contains("left,minmax,1 2 3|4,1.750000000000"));
    }
}
