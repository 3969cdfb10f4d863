use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::kressquad::BoundaryGrid;
use crate::vec2::Vec2;
use crate::Poly;

/// Closed-form Dirichlet data as a function of `(edge index, point)`.
pub type EdgeSampler = Arc<dyn Fn(usize, Vec2) -> f64 + Send + Sync>;

/// Dirichlet trace of a local function.
#[derive(Clone)]
pub enum TraceSpec {
    Zero,
    /// Restriction of one polynomial to the whole boundary.
    Polynomial(Poly),
    /// One polynomial per edge, agreeing at shared vertices.
    PerEdge(Vec<Poly>),
    Sampler(EdgeSampler),
    Combination(Vec<(f64, TraceSpec)>),
}

impl fmt::Debug for TraceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceSpec::Zero => write!(f, "Zero"),
            TraceSpec::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            TraceSpec::PerEdge(ps) => f.debug_tuple("PerEdge").field(ps).finish(),
            TraceSpec::Sampler(_) => write!(f, "Sampler(..)"),
            TraceSpec::Combination(parts) => f.debug_tuple("Combination").field(parts).finish(),
        }
    }
}

impl TraceSpec {
    pub fn eval(&self, edge: usize, x: Vec2) -> f64 {
        match self {
            TraceSpec::Zero => 0.0,
            TraceSpec::Polynomial(p) => p.eval(x),
            TraceSpec::PerEdge(ps) => ps[edge].eval(x),
            TraceSpec::Sampler(s) => s(edge, x),
            TraceSpec::Combination(parts) => parts.iter().map(|(a, t)| a * t.eval(edge, x)).sum(),
        }
    }

    pub fn sample(&self, grid: &BoundaryGrid) -> Vec<f64> {
        match self {
            TraceSpec::Zero => vec![0.0; grid.len()],
            _ => grid.nodes().iter().map(|nd| self.eval(nd.edge, nd.point)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TraceSpec::Zero => true,
            TraceSpec::Polynomial(p) => p.is_zero(),
            TraceSpec::PerEdge(ps) => ps.iter().all(Poly::is_zero),
            TraceSpec::Sampler(_) => false,
            TraceSpec::Combination(parts) => parts.iter().all(|(a, t)| *a == 0.0 || t.is_zero()),
        }
    }

    /// Highest polynomial degree over the edges; `None` for samplers.
    pub fn degree(&self) -> Option<u32> {
        match self {
            TraceSpec::Zero => Some(0),
            TraceSpec::Polynomial(p) => Some(p.degree().unwrap_or(0)),
            TraceSpec::PerEdge(ps) => Some(ps.iter().filter_map(Poly::degree).max().unwrap_or(0)),
            TraceSpec::Sampler(_) => None,
            TraceSpec::Combination(parts) => parts.iter().map(|(_, t)| t.degree()).try_fold(0, |m, d| d.map(|d| m.max(d))),
        }
    }
}

static NEXT_FUNCTION_ID: AtomicU64 = AtomicU64::new(1);

/// A function `v` on the cell given by its Laplacian `Δv = p` (a polynomial)
/// and its Dirichlet trace.
#[derive(Clone, Debug)]
pub struct VmFunction {
    id: u64,
    name: String,
    laplacian: Poly,
    trace: TraceSpec,
    polynomial: Option<Poly>,
}

impl VmFunction {
    pub fn new(name: impl Into<String>, laplacian: Poly, trace: TraceSpec) -> Self {
        VmFunction { id: NEXT_FUNCTION_ID.fetch_add(1, Ordering::Relaxed), name: name.into(), laplacian, trace, polynomial: None }
    }

    pub fn harmonic(name: impl Into<String>, trace: TraceSpec) -> Self {
        Self::new(name, Poly::zero(Vec2::ZERO), trace)
    }

    /// Zero trace with `Δv = p`.
    pub fn bubble(name: impl Into<String>, laplacian: Poly) -> Self {
        Self::new(name, laplacian, TraceSpec::Zero)
    }

    /// The polynomial `r` itself.
    pub fn polynomial(name: impl Into<String>, r: Poly) -> Self {
        let mut v = Self::new(name, r.laplacian(), TraceSpec::Polynomial(r.clone()));
        v.polynomial = Some(r);
        v
    }

    /// `Σ a_i v_i`.
    pub fn linear_combination(name: impl Into<String>, parts: &[(f64, &VmFunction)], center: Vec2) -> Self {
        let laplacian = parts.iter().fold(Poly::zero(center), |acc, (a, v)| {
            acc.add(&v.laplacian.recentered(center).scale(*a)).expect("shared center")
        });
        let trace = TraceSpec::Combination(parts.iter().map(|(a, v)| (*a, v.trace.clone())).collect());
        Self::new(name, laplacian, trace)
    }

    /// Identity used for caching; clones share it.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn laplacian(&self) -> &Poly {
        &self.laplacian
    }

    pub fn trace(&self) -> &TraceSpec {
        &self.trace
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.polynomial.as_ref()
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian.is_zero()
    }

    pub fn has_zero_trace(&self) -> bool {
        self.trace.is_zero()
    }

    /// Smallest `m` with `p ∈ P_{m-2}` and trace of degree `≤ m`; `None`
    /// for closed-form traces.
    pub fn degree(&self) -> Option<u32> {
        let from_p = self.laplacian.degree().map_or(0, |d| d + 2);
        self.trace.degree().map(|d| d.max(from_p).max(1))
    }
}
