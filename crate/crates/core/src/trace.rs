//! Scalar fields sampled at the nodes of one boundary grid.

use crate::error::{Error, Result};
use crate::kressquad::BoundaryGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    Dirichlet,
    Neumann,
    Tangential,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceSamples {
    grid_id: u64,
    kind: TraceKind,
    values: Vec<f64>,
}

impl TraceSamples {
    pub fn new(grid: &BoundaryGrid, kind: TraceKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(TraceSamples { grid_id: grid.id(), kind, values })
    }

    /// Samples `f` at every node.
    pub fn sample(grid: &BoundaryGrid, kind: TraceKind, f: impl Fn(&crate::kressquad::Node) -> f64) -> Self {
        TraceSamples { grid_id: grid.id(), kind, values: grid.nodes().iter().map(f).collect() }
    }

    pub fn zeros(grid: &BoundaryGrid, kind: TraceKind) -> Self {
        TraceSamples { grid_id: grid.id(), kind, values: vec![0.0; grid.len()] }
    }

    pub fn kind(&self) -> TraceKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_grid(&self, grid: &BoundaryGrid) -> Result<()> {
        if self.grid_id != grid.id() || self.values.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: self.values.len() });
        }
        Ok(())
    }

    pub fn require(&self, kind: TraceKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidParameter(format!("expected {kind:?} samples, got {:?}", self.kind)));
        }
        Ok(())
    }
}
