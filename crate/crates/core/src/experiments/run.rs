use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::allocation::{
    assignment_to_allocation, greedy_allocate, scale_allocation_with, uniform_allocation,
    Allocation, CostMatrix, MergeRule, ScalingOptions, SlotAssignment,
};
use crate::error::{Error, Result};
use crate::rng::substream;
use crate::throughput::{exact_throughput, simulate, ThroughputReport};
use crate::traffic::{
    analytic_pair_stats, deploy_users, empirical_pair_stats, CyclicModel, CyclicSampling,
    IndependentModel, PairwiseStats, SpatioTemporalModel, TrafficModel,
};

use super::config::{Evaluation, ExperimentConfig, ModelSpec, Scheme, StatsSource};

// Stream ids under the experiment seed. Sweep point `p` uses `base | p`.
const DEPLOY_STREAM: u64 = 0;
const ESTIMATION_STREAM: u64 = 1 << 32;
const EVALUATION_STREAM: u64 = 2 << 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    /// `None` for models without an event rate.
    pub lambda: Option<f64>,
    pub scheme: Scheme,
    pub report: ThroughputReport,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub const HEADER: &'static str =
        "lambda,mean_arrivals,scheme,K,tp_per_frame,tp_per_slot,stderr,frames,seed";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for row in &self.rows {
            let r = &row.report;
            let _ = writeln!(
                out,
                "{},{:.6},{},{},{:.9},{:.9},{:.9},{},{}",
                row.lambda.map(|l| format!("{l:.9e}")).unwrap_or_default(),
                r.mean_arrivals,
                row.scheme,
                r.slots,
                r.per_frame_successes,
                r.per_slot_rate,
                r.std_error,
                r.frames_simulated,
                row.seed
            );
        }
        out
    }

    /// Rows for one scheme, in sweep order.
    pub fn scheme_rows(&self, scheme: Scheme) -> Vec<&ResultRow> {
        self.rows.iter().filter(|r| r.scheme == scheme).collect()
    }
}

/// Runs every (rate, scheme) combination of `config`.
///
/// Users are deployed once per experiment. Sweep points run in parallel;
/// within a point every scheme is simulated from the same root seed, so
/// schemes see identical activity frames.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let rows = match &config.model {
        ModelSpec::SpatioTemporal {
            users,
            region_side,
            radius,
            lambdas,
        } => {
            let mut rng = substream(config.seed, DEPLOY_STREAM);
            let locations = deploy_users(*users, *region_side, *radius, &mut rng)?;
            let points: Vec<Vec<ResultRow>> = lambdas
                .par_iter()
                .enumerate()
                .map(|(p, &lambda)| {
                    let model = SpatioTemporalModel::new(locations.clone(), lambda)?;
                    let stats = match config.stats_source {
                        StatsSource::Analytic => analytic_pair_stats(&model, config.pair_formula),
                        StatsSource::Empirical(n) => estimate(&model, n, config.seed, p as u64)?,
                    };
                    run_point(config, &model, &stats, Some(lambda), p as u64)
                })
                .collect::<Result<_>>()?;
            points.into_iter().flatten().collect()
        }
        ModelSpec::Cyclic { pattern } => {
            let model = CyclicModel::new(pattern.clone(), CyclicSampling::Cycle);
            let stats = point_stats(config, &model)?;
            run_point(config, &model, &stats, None, 0)?
        }
        ModelSpec::Independent { probabilities } => {
            let model = IndependentModel::new(probabilities.clone())?;
            let stats = point_stats(config, &model)?;
            run_point(config, &model, &stats, None, 0)?
        }
    };
    Ok(ResultTable { rows })
}

fn point_stats(config: &ExperimentConfig, model: &dyn TrafficModel) -> Result<PairwiseStats> {
    match config.stats_source {
        StatsSource::Analytic => model
            .exact_stats()
            .ok_or_else(|| Error::Capability("model has no exact statistics".into())),
        StatsSource::Empirical(n) => estimate(model, n, config.seed, 0),
    }
}

fn estimate(model: &dyn TrafficModel, frames: u64, seed: u64, point: u64) -> Result<PairwiseStats> {
    let mut rng = substream(seed, ESTIMATION_STREAM | point);
    let observed: Vec<_> = (0..frames)
        .map(|t| model.sample_frame(t, &mut rng))
        .collect();
    empirical_pair_stats(&observed)
}

fn run_point(
    config: &ExperimentConfig,
    model: &dyn TrafficModel,
    stats: &PairwiseStats,
    lambda: Option<f64>,
    point: u64,
) -> Result<Vec<ResultRow>> {
    let users = model.user_count();
    let cost = CostMatrix::from_stats(stats);
    let mut assignments: HashMap<MergeRule, SlotAssignment> = HashMap::new();
    let mut assignment = |rule: MergeRule| -> Result<SlotAssignment> {
        if let Some(a) = assignments.get(&rule) {
            return Ok(a.clone());
        }
        let a = greedy_allocate(&cost, config.slots, rule)?;
        assignments.insert(rule, a.clone());
        Ok(a)
    };
    let scaling = ScalingOptions {
        skip_inactive: true,
        ..ScalingOptions::default()
    };

    let mut rows = Vec::with_capacity(config.schemes.len());
    for &scheme in &config.schemes {
        let allocation: Allocation = match scheme {
            Scheme::Uniform => uniform_allocation(users, config.slots)?,
            Scheme::MinMax => assignment_to_allocation(&assignment(MergeRule::Max)?),
            Scheme::MinSum => assignment_to_allocation(&assignment(MergeRule::Sum)?),
            Scheme::MinMaxScaled => {
                scale_allocation_with(&assignment(MergeRule::Max)?, stats, &scaling)?
            }
            Scheme::MinSumScaled => {
                scale_allocation_with(&assignment(MergeRule::Sum)?, stats, &scaling)?
            }
        };
        let report = match config.evaluation {
            Evaluation::Exact => exact_throughput(model, &allocation)?,
            Evaluation::Simulate => {
                let mut rng = substream(config.seed, EVALUATION_STREAM | point);
                simulate(model, &allocation, config.frames, &mut rng)?
            }
        };
        rows.push(ResultRow {
            lambda,
            scheme,
            report,
            seed: config.seed,
        });
    }
    Ok(rows)
}
