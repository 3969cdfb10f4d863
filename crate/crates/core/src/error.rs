use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomials are centered at different points")]
    CenterMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {edge} has degenerate parameterization at t = {t}")]
    DegenerateEdge { edge: usize, t: f64 },
    #[error("invalid cell: {}", .0.join("; "))]
    InvalidCell(Vec<String>),
    #[error("trace samples belong to another grid (expected {expected} values, found {found})")]
    GridMismatch { expected: usize, found: usize },
    #[error("Neumann data has net flux {defect:e}, above tolerance {tolerance:e}")]
    Compatibility { defect: f64, tolerance: f64 },
    #[error("GMRES stopped after {iterations} iterations with relative residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("edge {0} is not a circular arc")]
    NotAnArc(usize),
    #[error("cell file line {line}: {message}")]
    CellFile { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}
