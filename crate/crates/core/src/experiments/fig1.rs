//! Two users, one or two slots: throughput against joint activity `p11`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::throughput::two_user_optimal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Row {
    pub p11: f64,
    /// Slot count chosen as if users were independent: two iff `lambda > 1`.
    pub traditional_k: usize,
    pub traditional_tp: f64,
    /// Slot count chosen from the actual `p11`.
    pub correlation_k: usize,
    pub correlation_tp: f64,
    /// Throughput when both users always share one slot.
    pub single_slot_tp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Table {
    pub lambda: f64,
    pub rows: Vec<Fig1Row>,
}

impl Fig1Table {
    pub const HEADER: &'static str =
        "lambda,p11,traditional_k,traditional_tp,correlation_k,correlation_tp,single_slot_tp";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.12},{},{:.12},{},{:.12},{:.12}",
                self.lambda,
                r.p11,
                r.traditional_k,
                r.traditional_tp,
                r.correlation_k,
                r.correlation_tp,
                r.single_slot_tp
            );
        }
        out
    }

    /// Row whose `p11` equals `p11` to within `1e-12`.
    pub fn at(&self, p11: f64) -> Option<&Fig1Row> {
        self.rows.iter().find(|r| (r.p11 - p11).abs() <= 1e-12)
    }
}

/// Evaluates both slot-count policies over the feasible `p11` range
/// `[max(0, lambda - 1), lambda / 2]`.
///
/// The grid has `points` evenly spaced values plus the breakpoint
/// `lambda / 4` and the independence point `(lambda / 2)^2` when they are
/// feasible.
pub fn reproduce_fig1(lambda: f64, points: usize) -> Result<Fig1Table> {
    if !(lambda > 0.0 && lambda <= 2.0) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 2]"
        )));
    }
    if points < 2 {
        return Err(Error::Domain("the p11 grid needs at least 2 points".into()));
    }
    let lo = (lambda - 1.0).max(0.0);
    let hi = lambda / 2.0;
    let mut grid: Vec<f64> = (0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect();
    for extra in [lambda / 4.0, (lambda / 2.0).powi(2)] {
        if extra >= lo && extra <= hi {
            grid.push(extra);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);

    let traditional_k = if lambda > 1.0 { 2 } else { 1 };
    let rows = grid
        .into_iter()
        .map(|p11| {
            let (correlation_k, correlation_tp) = two_user_optimal(lambda, p11)?;
            Ok(Fig1Row {
                p11,
                traditional_k,
                traditional_tp: fixed(lambda, p11, traditional_k),
                correlation_k,
                correlation_tp,
                single_slot_tp: fixed(lambda, p11, 1),
            })
        })
        .collect::<Result<_>>()?;
    Ok(Fig1Table { lambda, rows })
}

fn fixed(lambda: f64, p11: f64, slots: usize) -> f64 {
    crate::throughput::two_user::two_user_throughput(lambda, p11, slots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_load_curves() {
        let t = reproduce_fig1(1.0, 11).unwrap();
        assert_eq!(t.rows.first().unwrap().p11, 0.0);
        assert_eq!(t.rows.last().unwrap().p11, 0.5);
        let start = t.at(0.0).unwrap();
        assert_eq!((start.traditional_tp, start.correlation_tp), (1.0, 1.0));
        let end = t.at(0.5).unwrap();
        assert_eq!((end.traditional_tp, end.correlation_tp), (0.0, 0.5));
        for r in t.rows.iter().filter(|r| r.p11 >= 0.25) {
            assert!((r.correlation_tp - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn independence_point_agrees() {
        for lambda in [0.4, 1.0, 1.1, 1.7] {
            let t = reproduce_fig1(lambda, 5).unwrap();
            let r = t.at((lambda / 2.0f64).powi(2)).unwrap();
            assert!(
                (r.traditional_tp - r.correlation_tp).abs() < 1e-12,
                "lambda {lambda}"
            );
        }
    }

    #[test]
    fn correlation_never_worse() {
        let t = reproduce_fig1(1.1, 101).unwrap();
        assert!(t
            .rows
            .iter()
            .all(|r| r.correlation_tp >= r.traditional_tp - 1e-15));
        assert!(t
            .rows
            .iter()
            .all(|r| r.correlation_tp >= r.single_slot_tp - 1e-15));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(reproduce_fig1(0.0, 5), Err(Error::Domain(_))));
        assert!(reproduce_fig1(2.5, 5).is_err());
        assert!(reproduce_fig1(1.0, 1).is_err());
    }
}
