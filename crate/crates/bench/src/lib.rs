//! Convergence benchmarks for boundary-reduced quadrature.
//!
//! Each experiment evaluates L² and H¹ products of local functions on a
//! fixed cell for a range of grid sizes and compares against exact or
//! series reference values. Rows come out in a fixed order regardless of
//! how the work pool schedules them.

pub mod experiments;
pub mod golden;
pub mod output;
pub mod references;

pub use experiments::{run_experiment, Experiment, ExperimentSpec, Product, Row, RunOutput, SolverHealth};
pub use golden::{Check, Manifest, Violation};
pub use references::{Provenance, ReferenceValue};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid experiment: {0}")]
    Spec(String),
    #[error(transparent)]
    Quadrature(#[from] curvquad::Error),
    #[error(transparent)]
    Reference(#[from] references::ReferenceError),
    #[error("golden manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
