use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::traffic::PairwiseStats;

/// Symmetric merge-cost matrix: `E[x_i x_j]` off the diagonal and `+inf` on it,
/// so a vertex is never paired with itself.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CostMatrix {
    pub fn new(n: usize, mut entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::config(
                "cost_matrix",
                format!("expected {} entries, got {}", n * n, entries.len()),
            ));
        }
        for i in 0..n {
            entries[i * n + i] = f64::INFINITY;
            for j in (i + 1)..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                if !a.is_finite() || a < 0.0 || a != b {
                    return Err(Error::config(
                        "cost_matrix",
                        format!("entry ({i}, {j}) must be finite, >= 0 and symmetric"),
                    ));
                }
            }
        }
        Ok(CostMatrix { n, entries })
    }

    pub fn from_stats(stats: &PairwiseStats) -> Self {
        let n = stats.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            entries.extend_from_slice(stats.pair_row(i));
            entries[i * n + i] = f64::INFINITY;
        }
        CostMatrix { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Every off-diagonal entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out.entries[i * self.n + j] *= factor;
                }
            }
        }
        out
    }
}

/// Position of the smallest off-diagonal entry; ties go to the
/// lexicographically smallest `(i, j)` with `i < j`.
pub fn min_edge(cost: &CostMatrix) -> Result<(usize, usize)> {
    let n = cost.len();
    if n < 2 {
        return Err(Error::Logic(format!(
            "min_edge needs at least 2 vertices, got {n}"
        )));
    }
    let mut best = (f64::INFINITY, 0, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = cost.get(i, j);
            if v < best.0 {
                best = (v, i, j);
            }
        }
    }
    Ok((best.1, best.2))
}

impl fmt::Display for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    if i == j {
                        "inf".to_string()
                    } else {
                        self.get(i, j).to_string()
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CostMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for (no, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let before = entries.len();
            for tok in line.split_whitespace() {
                let v = match tok {
                    "inf" => f64::INFINITY,
                    _ => tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: no + 1,
                        message: format!("`{tok}` is not a number"),
                    })?,
                };
                entries.push(v);
            }
            if rows > 0 && entries.len() - before != before / rows {
                return Err(Error::Parse {
                    line: no + 1,
                    message: "ragged matrix".into(),
                });
            }
            rows += 1;
        }
        if entries.len() != rows * rows {
            return Err(Error::Parse {
                line: rows,
                message: format!(
                    "{rows} rows but {} entries; matrix must be square",
                    entries.len()
                ),
            });
        }
        CostMatrix::new(rows, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three(a: f64, b: f64, c: f64) -> CostMatrix {
        CostMatrix::new(3, vec![0.0, a, b, a, 0.0, c, b, c, 0.0]).unwrap()
    }

    #[test]
    fn unique_minimum() {
        assert_eq!(min_edge(&three(0.1, 0.2, 0.3)).unwrap(), (0, 1));
        assert_eq!(min_edge(&three(0.4, 0.2, 0.3)).unwrap(), (0, 2));
        assert_eq!(min_edge(&three(0.4, 0.5, 0.3)).unwrap(), (1, 2));
    }

    #[test]
    fn ties_go_to_first_pair() {
        assert_eq!(min_edge(&three(0.5, 0.5, 0.5)).unwrap(), (0, 1));
        assert_eq!(min_edge(&three(0.6, 0.5, 0.5)).unwrap(), (0, 2));
    }

    #[test]
    fn too_small_is_a_logic_error() {
        let c = CostMatrix::new(1, vec![0.0]).unwrap();
        assert!(matches!(min_edge(&c), Err(Error::Logic(_))));
    }

    #[test]
    fn text_round_trip() {
        let c = three(0.25, 0.5, 0.125);
        let text = c.to_string();
        assert!(text.starts_with("inf 0.25 0.5\n"));
        assert_eq!(text.parse::<CostMatrix>().unwrap(), c);
        assert!("inf 1\n1 inf 2\n".parse::<CostMatrix>().is_err());
        assert!("inf 1\n2 inf\n".parse::<CostMatrix>().is_err());
    }
}
