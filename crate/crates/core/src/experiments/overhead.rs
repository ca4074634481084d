//! Downlink bits needed to tell users their allocation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalingMode {
    /// Each user is told one slot.
    SingleSlot,
    /// Each user is told `K - 1` free slot probabilities of `P` bits each.
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    AllUsers,
    /// Only `M` users are scheduled and must also be identified.
    Subset,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverheadQuery {
    pub users: u64,
    pub slots: u64,
    pub scheduled: u64,
    pub probability_bits: u64,
    pub mode: SignalingMode,
    pub scope: Scope,
}

/// Lower bound on signaling bits; callers round up.
///
/// | mode / scope | all users | subset of `M` |
/// |---|---|---|
/// | single slot | `N log2 K` | `M log2(N K)` |
/// | probabilistic | `N (K-1) P` | `M (K-1) P log2 N` |
pub fn signaling_overhead(q: &OverheadQuery) -> Result<f64> {
    if q.users == 0 || q.slots == 0 {
        return Err(Error::config("users", "N and K must be at least 1"));
    }
    if q.scope == Scope::Subset && q.scheduled > q.users {
        return Err(Error::config(
            "scheduled",
            format!("M = {} exceeds N = {}", q.scheduled, q.users),
        ));
    }
    if q.mode == SignalingMode::Probabilistic && q.probability_bits == 0 {
        return Err(Error::config("bits", "P must be at least 1"));
    }
    let (n, k, m, p) = (
        q.users as f64,
        q.slots as f64,
        q.scheduled as f64,
        q.probability_bits as f64,
    );
    Ok(match (q.mode, q.scope) {
        (SignalingMode::SingleSlot, Scope::AllUsers) => n * k.log2(),
        (SignalingMode::Probabilistic, Scope::AllUsers) => n * (k - 1.0) * p,
        (SignalingMode::SingleSlot, Scope::Subset) => m * (n * k).log2(),
        (SignalingMode::Probabilistic, Scope::Subset) => m * (k - 1.0) * p * n.log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(mode: SignalingMode, scope: Scope) -> OverheadQuery {
        OverheadQuery {
            users: 1000,
            slots: 150,
            scheduled: 10,
            probability_bits: 8,
            mode,
            scope,
        }
    }

    #[test]
    fn reference_values() {
        let all = signaling_overhead(&query(SignalingMode::SingleSlot, Scope::AllUsers)).unwrap();
        assert!((all - 7228.81869049588).abs() < 1e-9);
        let subset = signaling_overhead(&query(SignalingMode::SingleSlot, Scope::Subset)).unwrap();
        assert!((subset - 171.94602975157966).abs() < 1e-9);
        let prob =
            signaling_overhead(&query(SignalingMode::Probabilistic, Scope::AllUsers)).unwrap();
        assert_eq!(prob, 1000.0 * 149.0 * 8.0);
        let prob_subset =
            signaling_overhead(&query(SignalingMode::Probabilistic, Scope::Subset)).unwrap();
        assert!((prob_subset - 10.0 * 149.0 * 8.0 * 1000f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn one_slot_needs_no_bits() {
        let mut q = query(SignalingMode::SingleSlot, Scope::AllUsers);
        q.slots = 1;
        assert_eq!(signaling_overhead(&q).unwrap(), 0.0);
    }

    #[test]
    fn invalid_queries() {
        let mut q = query(SignalingMode::SingleSlot, Scope::Subset);
        q.scheduled = 1001;
        assert!(signaling_overhead(&q).is_err());
        let mut q = query(SignalingMode::Probabilistic, Scope::AllUsers);
        q.probability_bits = 0;
        assert!(signaling_overhead(&q).is_err());
    }
}
