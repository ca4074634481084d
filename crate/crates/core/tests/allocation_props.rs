use std::time::Instant;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use corrsched::allocation::{
    greedy_allocate, greedy_merge, min_edge, scale_allocation, CostMatrix, MergeRule,
    SlotAssignment,
};
use corrsched::rng::SimRng;
use corrsched::traffic::{JointTable, PairwiseStats, TrafficModel};

fn cost_matrix(n: usize, raw: &[f64]) -> CostMatrix {
    let mut entries = vec![0.0; n * n];
    let mut it = raw.iter().cycle();
    for i in 0..n {
        for j in i + 1..n {
            let v = *it.next().unwrap();
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    CostMatrix::new(n, entries).unwrap()
}

/// Values on a coarse grid so that ties actually occur.
fn arb_cost() -> impl Strategy<Value = CostMatrix> {
    (2usize..=24, prop::collection::vec(0u8..6, 1..300)).prop_map(|(n, raw)| {
        cost_matrix(n, &raw.iter().map(|&v| v as f64 / 8.0).collect::<Vec<_>>())
    })
}

#[allow(clippy::needless_range_loop)]
/// Textbook greedy: rebuild the reduced matrix and search it in full every step.
fn naive_greedy(cost: &CostMatrix, slots: usize, rule: MergeRule) -> (Vec<Vec<usize>>, Vec<f64>) {
    let mut groups: Vec<Vec<usize>> = (0..cost.len()).map(|u| vec![u]).collect();
    let mut w: Vec<Vec<f64>> = (0..cost.len())
        .map(|i| (0..cost.len()).map(|j| cost.get(i, j)).collect())
        .collect();
    while groups.len() > slots {
        let m = groups.len();
        let flat: Vec<f64> = w.iter().flatten().copied().collect();
        let (i, j) = min_edge(&CostMatrix::new(m, flat).unwrap()).unwrap();
        let internal = w[i][j];
        for n in 0..m {
            if n != i && n != j {
                let v = match rule {
                    MergeRule::Max => w[n][i].max(w[n][j]),
                    MergeRule::Sum => internal + w[n][i] + w[n][j],
                    MergeRule::CrossSum => w[n][i] + w[n][j],
                };
                w[n][j] = v;
                w[j][n] = v;
            }
        }
        let moved = groups.remove(i);
        groups[j - 1].extend(moved);
        w.remove(i);
        for row in &mut w {
            row.remove(i);
        }
    }
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&g| groups[g].iter().min().copied());
    let edges = order
        .iter()
        .flat_map(|&a| order.iter().map(move |&b| (a, b)))
        .map(|(a, b)| if a == b { f64::INFINITY } else { w[a][b] })
        .collect();
    let mut sorted: Vec<Vec<usize>> = order.iter().map(|&g| groups[g].clone()).collect();
    for g in &mut sorted {
        g.sort_unstable();
    }
    (sorted, edges)
}

fn used_groups(a: &SlotAssignment) -> Vec<Vec<usize>> {
    a.groups().into_iter().filter(|g| !g.is_empty()).collect()
}

fn arb_rule() -> impl Strategy<Value = MergeRule> {
    prop_oneof![
        Just(MergeRule::Max),
        Just(MergeRule::Sum),
        Just(MergeRule::CrossSum)
    ]
}

proptest! {
    #[test]
    fn partition_has_min_n_k_nonempty_slots(cost in arb_cost(), k in 1usize..30, rule in arb_rule()) {
        let a = greedy_allocate(&cost, k, rule).unwrap();
        let groups = a.groups();
        prop_assert_eq!(a.users(), cost.len());
        prop_assert_eq!(a.slot_count(), k);
        // Slots past N stay empty; the first min(N, K) are all used.
        prop_assert!(groups[..k.min(cost.len())].iter().all(|g| !g.is_empty()));
        prop_assert!(groups[k.min(cost.len())..].iter().all(|g| g.is_empty()));
        let mut all: Vec<usize> = groups.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..cost.len()).collect::<Vec<_>>());
    }

    #[test]
    fn matches_naive_reference(cost in arb_cost(), k in 1usize..12, rule in arb_rule()) {
        let fast = greedy_merge(&cost, k, rule).unwrap();
        let (groups, edges) = naive_greedy(&cost, k, rule);
        prop_assert_eq!(used_groups(&fast.assignment), groups);
        prop_assert_eq!(fast.group_edges, edges);
    }

    #[test]
    fn max_rule_edges_are_group_maxima(cost in arb_cost(), k in 2usize..12) {
        let out = greedy_merge(&cost, k, MergeRule::Max).unwrap();
        let groups = used_groups(&out.assignment);
        let g = groups.len();
        for a in 0..g {
            for b in 0..g {
                if a == b { continue; }
                let brute = groups[a]
                    .iter()
                    .flat_map(|&u| groups[b].iter().map(move |&v| (u, v)))
                    .map(|(u, v)| cost.get(u, v))
                    .fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(out.group_edges[a * g + b], brute);
            }
        }
    }

    #[test]
    fn positive_rescaling_keeps_assignment(cost in arb_cost(), k in 1usize..12, rule in arb_rule(), e in -3i32..4) {
        let factor = 2f64.powi(e);
        prop_assert_eq!(
            greedy_allocate(&cost, k, rule).unwrap(),
            greedy_allocate(&cost.scaled(factor), k, rule).unwrap()
        );
    }

    #[test]
    fn min_edge_is_lexicographic_argmin(cost in arb_cost()) {
        let (i, j) = min_edge(&cost).unwrap();
        let n = cost.len();
        let best = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .min_by(|&(a, b), &(c, d)| cost.get(a, b).total_cmp(&cost.get(c, d)).then((a, b).cmp(&(c, d))))
            .unwrap();
        prop_assert_eq!((i, j), best);
    }

    #[test]
    fn scaling_stays_in_box_and_improves(
        g in 1usize..7,
        seed_weights in prop::collection::vec(0.001f64..1.0, 128),
        slots in 1usize..3,
    ) {
        let weights = seed_weights[..1 << g].to_vec();
        let stats = JointTable::new(g, weights).unwrap().exact_stats().unwrap();
        let assignment = SlotAssignment::new((0..g).map(|u| u % slots).collect(), slots).unwrap();
        let out = scale_allocation(&assignment, &stats).unwrap();
        for u in 0..g {
            let s = assignment.slot_of(u);
            prop_assert!((0.0..=1.0).contains(&out.get(u, s)));
            prop_assert!((out.row_sum(u) - out.get(u, s)).abs() == 0.0);
        }
        for group in assignment.groups() {
            let sub = stats.restrict(&group);
            let a: Vec<f64> = group.iter().map(|&u| out.get(u, assignment.slot_of(u))).collect();
            prop_assert!(objective(&a, &sub) <= objective(&vec![1.0; a.len()], &sub) + 1e-12);
        }
    }
}

fn objective(a: &[f64], stats: &PairwiseStats) -> f64 {
    (0..a.len())
        .map(|i| {
            let load: f64 = (0..a.len())
                .map(|j| {
                    if i == j {
                        a[j]
                    } else {
                        a[j] * stats.pair(i, j) / stats.activity(i)
                    }
                })
                .sum();
            (load - 1.0).powi(2)
        })
        .sum()
}

#[test]
fn singleton_groups_transmit_surely() {
    let stats = PairwiseStats::new(vec![0.3, 0.6], vec![0.3, 0.2, 0.2, 0.6]).unwrap();
    let out = scale_allocation(&SlotAssignment::identity(2, 2).unwrap(), &stats).unwrap();
    assert_eq!((out.get(0, 0), out.get(1, 1)), (1.0, 1.0));
}

#[test]
fn greedy_scales_subcubically() {
    let time = |n: usize| {
        let mut rng = SimRng::seed_from_u64(n as u64);
        let raw: Vec<f64> = (0..n * (n - 1) / 2).map(|_| rng.random()).collect();
        let cost = cost_matrix(n, &raw);
        let start = Instant::now();
        greedy_allocate(&cost, n / 10, MergeRule::Max).unwrap();
        start.elapsed().as_secs_f64()
    };
    time(300);
    let small = time(1000);
    let large = time(2000);
    assert!(
        large <= 8.0 * small,
        "N=2000 took {large}s against {small}s at N=1000"
    );
}
