//! Experiment configuration, sweeps and CSV output.

mod config;
mod fig1;
mod fig3;
mod overhead;
mod run;

pub use config::{
    default_lambda_grid, Evaluation, ExperimentConfig, ModelSpec, Scheme, StatsSource,
};
pub use fig1::{reproduce_fig1, Fig1Row, Fig1Table};
pub use fig3::{fig3_csv, fig3_left_pattern, fig3_right_pattern, reproduce_fig3, Fig3Row};
pub use overhead::{signaling_overhead, OverheadQuery, Scope, SignalingMode};
pub use run::{run_experiment, ResultRow, ResultTable};
