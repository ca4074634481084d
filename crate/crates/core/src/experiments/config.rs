//! Flat `key = value` experiment files.
//!
//! ```text
//! # spatio-temporal sweep
//! model = spatial            # spatial | cyclic | independent
//! users = 1000
//! region_side = 100
//! radius = 15
//! lambda_min = 1e-5          # events per unit area per frame
//! lambda_max = 3e-3
//! lambda_points = 20         # log-spaced; or `lambdas = a, b, c`
//! slots = 150
//! schemes = uniform, minmax, minsum, minmax_scaled, minsum_scaled
//! frames = 1000
//! stats_source = analytic    # analytic | empirical:<frames>
//! evaluation = simulate      # simulate | exact
//! pair_formula = exact       # exact | printed
//! seed = 1
//! ```
//!
//! Cyclic models take `pattern_file = path` (relative to the config file);
//! independent models take `probabilities = p1, p2, ...` or
//! `users = N` with `probability = p`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::traffic::{CyclicPattern, PairFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Uniform,
    MinMax,
    MinSum,
    MinMaxScaled,
    MinSumScaled,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Uniform,
        Scheme::MinMax,
        Scheme::MinSum,
        Scheme::MinMaxScaled,
        Scheme::MinSumScaled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Uniform => "uniform",
            Scheme::MinMax => "minmax",
            Scheme::MinSum => "minsum",
            Scheme::MinMaxScaled => "minmax_scaled",
            Scheme::MinSumScaled => "minsum_scaled",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::config("schemes", format!("unknown scheme `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    SpatioTemporal {
        users: usize,
        region_side: f64,
        radius: f64,
        lambdas: Vec<f64>,
    },
    Cyclic {
        pattern: CyclicPattern,
    },
    Independent {
        probabilities: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StatsSource {
    /// Closed-form or exactly known statistics.
    #[default]
    Analytic,
    /// Sample statistics over this many frames.
    Empirical(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    Simulate,
    /// Enumerate the joint distribution; needs a model that supports it.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub slots: usize,
    pub schemes: Vec<Scheme>,
    pub frames: u64,
    pub stats_source: StatsSource,
    pub evaluation: Evaluation,
    pub pair_formula: PairFormula,
    pub seed: u64,
}

/// `points` log-spaced rates from `0.1 / L^2` to `30 / L^2`.
pub fn default_lambda_grid(region_side: f64, points: usize) -> Vec<f64> {
    log_grid(
        0.1 / (region_side * region_side),
        30.0 / (region_side * region_side),
        points,
    )
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (points - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

const KEYS: &[&str] = &[
    "model",
    "users",
    "region_side",
    "radius",
    "lambdas",
    "lambda_min",
    "lambda_max",
    "lambda_points",
    "pattern_file",
    "probabilities",
    "probability",
    "slots",
    "schemes",
    "frames",
    "stats_source",
    "evaluation",
    "pair_formula",
    "seed",
];

struct Entries {
    map: BTreeMap<String, String>,
}

impl Entries {
    fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::config(key, "missing required key"))
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::config(key, format!("cannot parse `{v}`")))
            })
            .transpose()
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<f64>()
                            .map_err(|_| Error::config(key, format!("cannot parse `{s}`")))
                    })
                    .collect()
            })
            .transpose()
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }

    /// Parses config text; relative pattern paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: no + 1,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::config(key, "unknown key"));
            }
            if map
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(Error::config(key, "key given twice"));
            }
        }
        let e = Entries { map };

        let model = match e.require("model")? {
            "spatial" => {
                let users = e
                    .parse::<usize>("users")?
                    .ok_or_else(|| Error::config("users", "missing required key"))?;
                let region_side = e.parse::<f64>("region_side")?.unwrap_or(100.0);
                let radius = e.parse::<f64>("radius")?.unwrap_or(15.0);
                let lambdas = match e.list("lambdas")? {
                    Some(l) => l,
                    None => {
                        let points = e.parse::<usize>("lambda_points")?.unwrap_or(20);
                        let side2 = region_side * region_side;
                        let lo = e.parse::<f64>("lambda_min")?.unwrap_or(0.1 / side2);
                        let hi = e.parse::<f64>("lambda_max")?.unwrap_or(30.0 / side2);
                        if !(lo > 0.0 && hi >= lo) {
                            return Err(Error::config(
                                "lambda_min",
                                "log-spaced sweep needs 0 < lambda_min <= lambda_max",
                            ));
                        }
                        log_grid(lo, hi, points)
                    }
                };
                ModelSpec::SpatioTemporal {
                    users,
                    region_side,
                    radius,
                    lambdas,
                }
            }
            "cyclic" => {
                let file = PathBuf::from(e.require("pattern_file")?);
                let path = match base_dir {
                    Some(dir) if file.is_relative() => dir.join(file),
                    _ => file,
                };
                ModelSpec::Cyclic {
                    pattern: CyclicPattern::from_file(&path)?,
                }
            }
            "independent" => {
                let probabilities = match e.list("probabilities")? {
                    Some(p) => p,
                    None => {
                        let users = e
                            .parse::<usize>("users")?
                            .ok_or_else(|| Error::config("users", "missing required key"))?;
                        let p = e.parse::<f64>("probability")?.ok_or_else(|| {
                            Error::config(
                                "probability",
                                "give `probabilities` or `users` + `probability`",
                            )
                        })?;
                        vec![p; users]
                    }
                };
                ModelSpec::Independent { probabilities }
            }
            other => return Err(Error::config("model", format!("unknown model `{other}`"))),
        };

        let schemes = match e.get("schemes") {
            Some(v) => v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<Scheme>>>()?,
            None => Scheme::ALL.to_vec(),
        };
        let stats_source = match e.get("stats_source") {
            None | Some("analytic") => StatsSource::Analytic,
            Some(v) => match v
                .strip_prefix("empirical:")
                .map(|n| n.trim().parse::<u64>())
            {
                Some(Ok(n)) => StatsSource::Empirical(n),
                _ => return Err(Error::config("stats_source", format!("cannot parse `{v}`"))),
            },
        };
        let evaluation = match e.get("evaluation") {
            None | Some("simulate") => Evaluation::Simulate,
            Some("exact") => Evaluation::Exact,
            Some(v) => {
                return Err(Error::config(
                    "evaluation",
                    format!("unknown evaluation `{v}`"),
                ))
            }
        };
        let pair_formula = match e.get("pair_formula") {
            None | Some("exact") => PairFormula::Exact,
            Some("printed") => PairFormula::Printed,
            Some(v) => {
                return Err(Error::config(
                    "pair_formula",
                    format!("unknown formula `{v}`"),
                ))
            }
        };

        let config = ExperimentConfig {
            model,
            slots: e
                .parse("slots")?
                .ok_or_else(|| Error::config("slots", "missing required key"))?,
            schemes,
            frames: e.parse("frames")?.unwrap_or(1000),
            stats_source,
            evaluation,
            pair_formula,
            seed: e.parse("seed")?.unwrap_or(0),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(Error::config("schemes", "at least one scheme is required"));
        }
        if self.slots == 0 {
            return Err(Error::config("slots", "must be at least 1"));
        }
        if self.frames == 0 {
            return Err(Error::config("frames", "must be at least 1"));
        }
        if self.stats_source == StatsSource::Empirical(0) {
            return Err(Error::config(
                "stats_source",
                "empirical estimation needs frames >= 1",
            ));
        }
        if let ModelSpec::SpatioTemporal {
            users,
            region_side,
            radius,
            lambdas,
        } = &self.model
        {
            if *users == 0 {
                return Err(Error::config("users", "must be at least 1"));
            }
            if !(*radius >= 0.0 && *region_side > 2.0 * radius) {
                return Err(Error::config(
                    "region_side",
                    format!("must exceed twice the radius ({radius})"),
                ));
            }
            if lambdas.is_empty() {
                return Err(Error::config("lambdas", "sweep has no points"));
            }
            if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
                return Err(Error::config("lambdas", format!("rate {l} must be >= 0")));
            }
        }
        Ok(())
    }
}
