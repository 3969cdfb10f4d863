//! Golden tolerance manifest.
//!
//! Plain text, one check per line, `#` starts a comment:
//!
//! ```text
//! <experiment> <cell> <pair> <product> <n> error <tol>
//! <experiment> <cell> <pair> <product> <n> value <target> <tol>
//! ```
//!
//! `error` bounds the row's `abs_error` column; `value` bounds
//! `|computed - target|`.

use std::fmt;
use std::path::Path;

use crate::experiments::{Experiment, Product, RunOutput};
use crate::BenchError;

/// The manifest shipped with the crate.
pub const BUILTIN: &str = include_str!("../golden/tolerances.txt");

#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    Error(f64),
    Value { target: f64, tol: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub experiment: Experiment,
    pub cell: String,
    pub pair: String,
    pub product: Product,
    pub n: usize,
    pub bound: Bound,
}

impl Check {
    pub fn tolerance(&self) -> f64 {
        match self.bound {
            Bound::Error(t) | Bound::Value { tol: t, .. } => t,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub check: Check,
    /// Observed error, or `None` when the row is missing or failed.
    pub observed: Option<f64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.check;
        let what = match c.bound {
            Bound::Error(_) => "error",
            Bound::Value { .. } => "value",
        };
        write!(f, "{} {} {} {} n={} {what}: ", c.experiment, c.cell, c.pair, c.product.name(), c.n)?;
        match self.observed {
            Some(x) => write!(f, "{x:.4e} > {:.4e}", c.tolerance()),
            None => write!(f, "no result"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub checks: Vec<Check>,
}

impl Manifest {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin manifest parses")
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut checks = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| BenchError::Manifest { line: i + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("`{s}`: {e}")));
            if f.len() < 7 {
                return Err(err(format!("expected at least 7 fields, got {}", f.len())));
            }
            let bound = match (f[5], f.len()) {
                ("error", 7) => Bound::Error(num(f[6])?),
                ("value", 8) => Bound::Value { target: num(f[6])?, tol: num(f[7])? },
                (kind, len) => return Err(err(format!("bad check `{kind}` with {len} fields"))),
            };
            checks.push(Check {
                experiment: f[0].parse().map_err(|e: BenchError| err(e.to_string()))?,
                cell: f[1].to_string(),
                pair: f[2].to_string(),
                product: f[3].parse().map_err(|e: BenchError| err(e.to_string()))?,
                n: f[4].parse().map_err(|e| err(format!("`{}`: {e}", f[4])))?,
                bound,
            });
        }
        Ok(Manifest { checks })
    }

    pub fn for_experiment(&self, experiment: Experiment) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.experiment == experiment)
    }

    /// Observed error for every check whose `n` was run; `None` marks a
    /// missing or failed row.
    pub fn evaluate(&self, experiment: Experiment, out: &RunOutput) -> Vec<(Check, Option<f64>)> {
        let mut results = Vec::new();
        for c in self.for_experiment(experiment) {
            if !out.rows.iter().any(|r| r.n == c.n) {
                continue;
            }
            let row = out.rows.iter().find(|r| r.cell == c.cell && r.pair == c.pair && r.product == c.product && r.n == c.n);
            let observed = row.filter(|r| r.failure.is_none()).and_then(|r| match c.bound {
                Bound::Error(_) => r.abs_error,
                Bound::Value { target, .. } => Some((r.computed - target).abs()),
            });
            results.push((c.clone(), observed));
        }
        results
    }

    pub fn verify(&self, experiment: Experiment, out: &RunOutput) -> Vec<Violation> {
        self.evaluate(experiment, out)
            .into_iter()
            .filter(|(c, observed)| !observed.is_some_and(|x| x <= c.tolerance()))
            .map(|(check, observed)| Violation { check, observed })
            .collect()
    }
}
