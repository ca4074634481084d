use proptest::prelude::*;

use corrsched::traffic::{
    analytic_pair_stats, PairFormula, Point, SpatioTemporalModel, UserLocations,
};

fn pair_model(d: f64, lambda: f64) -> SpatioTemporalModel {
    let locations = UserLocations::new(
        vec![Point::new(20.0, 50.0), Point::new(20.0 + d, 50.0)],
        100.0,
        15.0,
    )
    .unwrap();
    SpatioTemporalModel::new(locations, lambda).unwrap()
}

proptest! {
    #[test]
    fn analytic_stats_are_valid(d in 0.0f64..60.0, lambda in 0.0f64..5e-3) {
        let stats = analytic_pair_stats(&pair_model(d, lambda), PairFormula::Exact);
        prop_assert!(stats.validate().is_ok());
        let p = stats.activity(0);
        prop_assert!(stats.pair(0, 1) >= p * p - 1e-12);
        prop_assert!(stats.pair(0, 1) <= p + 1e-12);
    }

    #[test]
    fn distant_users_are_independent(d in 30.0f64..60.0, lambda in 0.0f64..5e-3) {
        let stats = analytic_pair_stats(&pair_model(d, lambda), PairFormula::Exact);
        let p = stats.activity(0);
        prop_assert!((stats.pair(0, 1) - p * p).abs() <= 1e-15);
    }

    #[test]
    fn co_activity_shrinks_with_distance(d in 0.0f64..29.0, step in 0.01f64..1.0, lambda in 1e-5f64..5e-3) {
        let near = analytic_pair_stats(&pair_model(d, lambda), PairFormula::Exact).pair(0, 1);
        let far = analytic_pair_stats(&pair_model(d + step, lambda), PairFormula::Exact).pair(0, 1);
        prop_assert!(far <= near + 1e-15);
    }
}
