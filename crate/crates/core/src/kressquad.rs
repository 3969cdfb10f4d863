//! Graded trapezoid quadrature on every edge, concatenated into one
//! boundary grid.
//!
//! On an edge slot `[a, b]` the sigmoidal map `λ` fixes both endpoints and
//! has `λ'` vanishing to order `σ - 1` there, so the uniform rule in `τ`
//! clusters nodes towards the vertices.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::cellgeom::Cell;
use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Default grading exponent.
pub const DEFAULT_SIGMA: u32 = 7;

/// The change of variable `λ: [a, b] → [a, b]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KressMap {
    a: f64,
    b: f64,
    sigma: u32,
}

impl KressMap {
    pub fn new(a: f64, b: f64, sigma: u32) -> Result<Self> {
        if sigma < 2 {
            return Err(Error::InvalidParameter(format!("grading exponent must be at least 2, got {sigma}")));
        }
        if !(b > a) {
            return Err(Error::InvalidParameter(format!("empty interval [{a}, {b}]")));
        }
        Ok(KressMap { a, b, sigma })
    }

    fn theta(&self, tau: f64) -> f64 {
        (2.0 * tau - self.a - self.b) / (self.b - self.a)
    }

    /// `v(θ) = (1/2 - 1/σ)θ³ + θ/σ + 1/2` and `dv/dθ`.
    fn v(&self, tau: f64) -> (f64, f64) {
        let s = f64::from(self.sigma);
        let th = self.theta(tau).clamp(-1.0, 1.0);
        let c = 0.5 - 1.0 / s;
        (c * th * th * th + th / s + 0.5, 3.0 * c * th * th + 1.0 / s)
    }

    /// Fraction `λ(τ) - a` of the slot length, as `(fraction, 1 - fraction)`
    /// with both parts computed without cancellation.
    pub fn fractions(&self, tau: f64) -> (f64, f64) {
        let (v, _) = self.v(tau);
        let p = v.powi(self.sigma as i32);
        let q = (1.0 - v).powi(self.sigma as i32);
        (p / (p + q), q / (p + q))
    }

    pub fn lambda(&self, tau: f64) -> f64 {
        let (lo, hi) = self.fractions(tau);
        if lo <= hi {
            self.a + (self.b - self.a) * lo
        } else {
            self.b - (self.b - self.a) * hi
        }
    }

    /// `dλ/dτ = 2σ v^{σ-1} (1-v)^{σ-1} v'(θ) / (v^σ + (1-v)^σ)²`.
    pub fn lambda_prime(&self, tau: f64) -> f64 {
        let (v, dv) = self.v(tau);
        let s = self.sigma as i32;
        let den = v.powi(s) + (1.0 - v).powi(s);
        2.0 * f64::from(self.sigma) * v.powi(s - 1) * (1.0 - v).powi(s - 1) * dv / (den * den)
    }
}

pub fn kress_lambda(tau: f64, a: f64, b: f64, sigma: u32) -> Result<f64> {
    Ok(KressMap::new(a, b, sigma)?.lambda(tau))
}

pub fn kress_lambda_prime(tau: f64, a: f64, b: f64, sigma: u32) -> Result<f64> {
    Ok(KressMap::new(a, b, sigma)?.lambda_prime(tau))
}

static NEXT_GRID_ID: AtomicU64 = AtomicU64::new(1);

/// One quadrature node of the concatenated boundary rule.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub edge: usize,
    /// Global uniform parameter.
    pub tau: f64,
    /// Edge parameter `λ(τ)`.
    pub t: f64,
    pub point: Vec2,
    /// One-sided at the vertex nodes.
    pub tangent: Vec2,
    pub normal: Vec2,
    /// `|x'(t)|`.
    pub speed: f64,
    /// `λ'(τ)|x'(t)|`, the arclength density in `τ`.
    pub tau_speed: f64,
    /// `h λ'(τ) |x'(t)|`.
    pub weight: f64,
}

/// Graded nodes over the whole boundary: `2n` per edge, starting with the
/// zero-weight vertex node.
#[derive(Debug)]
pub struct BoundaryGrid {
    id: u64,
    cell: Arc<Cell>,
    n: usize,
    sigma: u32,
    h: f64,
    nodes: Vec<Node>,
}

impl BoundaryGrid {
    pub fn new(cell: &Cell, n: usize, sigma: u32) -> Result<Self> {
        Self::with_cell(Arc::new(cell.clone()), n, sigma)
    }

    pub fn with_cell(cell: Arc<Cell>, n: usize, sigma: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("grid size n = {n} must be at least 2")));
        }
        let m = 2 * n;
        let total = m * cell.num_edges();
        let h = std::f64::consts::TAU / total as f64;
        let mut nodes = Vec::with_capacity(total);
        for (e, edge) in cell.edges().iter().enumerate() {
            let map = KressMap::new(edge.a, edge.b, sigma)?;
            for k in 0..m {
                let tau = (e * m + k) as f64 * h;
                let t = if k == 0 { edge.a } else { map.lambda(tau) };
                let d = edge.deriv(t);
                let speed = d.norm();
                if speed < 1e-14 {
                    return Err(Error::DegenerateEdge { edge: e, t });
                }
                let tangent = d.scale(1.0 / speed);
                let lp = if k == 0 { 0.0 } else { map.lambda_prime(tau) };
                nodes.push(Node {
                    edge: e,
                    tau,
                    t,
                    point: edge.point(t),
                    tangent,
                    normal: Vec2::new(tangent.y, -tangent.x),
                    speed,
                    tau_speed: lp * speed,
                    weight: h * lp * speed,
                });
            }
        }
        Ok(BoundaryGrid { id: NEXT_GRID_ID.fetch_add(1, Ordering::Relaxed), cell, n, sigma, h, nodes })
    }

    /// Identity used to check that samples and operators belong to this grid.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Uniform spacing in `τ`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.nodes.iter().map(|nd| nd.point)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.nodes.iter().map(|nd| nd.weight).collect()
    }

    /// Nodes on the middle half of each edge, away from the graded ends.
    pub fn interior_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        let m = 2 * self.n;
        (0..self.len()).filter(move |j| {
            let k = j % m;
            k >= m / 4 && k <= 3 * m / 4
        })
    }

    pub fn perimeter(&self) -> f64 {
        self.nodes.iter().map(|nd| nd.weight).sum()
    }

    /// `Σ_j f(x_j, n_j) w_j`.
    pub fn integrate_fn(&self, f: impl Fn(&Node) -> f64) -> f64 {
        self.nodes.iter().filter(|nd| nd.weight != 0.0).map(|nd| f(nd) * nd.weight).sum()
    }

    /// `Σ_j values_j w_j`.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::GridMismatch { expected: self.len(), found: values.len() });
        }
        Ok(self.nodes.iter().zip(values).map(|(nd, v)| nd.weight * v).sum())
    }
}

pub fn build_grid(cell: &Cell, n: usize, sigma: u32) -> Result<BoundaryGrid> {
    BoundaryGrid::new(cell, n, sigma)
}

pub fn integrate_boundary(samples: &crate::trace::TraceSamples, grid: &BoundaryGrid) -> Result<f64> {
    samples.check_grid(grid)?;
    grid.integrate(samples.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn endpoints_and_midpoint_are_fixed() {
        for sigma in [2, 3, 7, 10] {
            let map = KressMap::new(0.3, 1.9, sigma).unwrap();
            assert_eq!(map.lambda(0.3), 0.3);
            assert_eq!(map.lambda(1.9), 1.9);
            assert!((map.lambda(1.1) - 1.1).abs() < 1e-15);
            assert!((map.lambda_prime(1.1) - 2.0).abs() < 1e-14);
        }
        assert!(KressMap::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let map = KressMap::new(0.0, 1.0, 7).unwrap();
        let h = 1e-6;
        for i in 1..40 {
            let tau = f64::from(i) / 40.0;
            let fd = (map.lambda(tau + h) - map.lambda(tau - h)) / (2.0 * h);
            assert!((fd - map.lambda_prime(tau)).abs() < 1e-8, "tau = {tau}");
        }
        // one-sided at the ends
        for tau in [0.0, 1.0] {
            assert_eq!(map.lambda_prime(tau), 0.0);
            let dir = if tau == 0.0 { 1.0 } else { -1.0 };
            let fd = (map.lambda(tau + dir * 1e-3) - map.lambda(tau)) / (dir * 1e-3);
            assert!(fd.abs() < 1e-14);
        }
    }

    #[test]
    fn map_is_increasing() {
        let map = KressMap::new(-1.0, 2.0, 7).unwrap();
        let mut prev = map.lambda(-1.0);
        for i in 1..=300 {
            let cur = map.lambda(-1.0 + 3.0 * f64::from(i) / 300.0);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn perimeters() {
        let circle = build_grid(&Cell::circle(), 32, 7).unwrap();
        assert!((circle.perimeter() - TAU).abs() < 1e-11);
        let fine = build_grid(&Cell::circle(), 64, 7).unwrap();
        assert!((fine.perimeter() - TAU).abs() < 1e-12);
        let square = build_grid(&Cell::square(), 32, 7).unwrap();
        assert!((square.perimeter() - 4.0).abs() < 1e-9);
        let fine = build_grid(&Cell::square(), 64, 7).unwrap();
        assert!((fine.perimeter() - 4.0).abs() < 1e-12);
        assert_eq!(build_grid(&Cell::puzzle(0.22, 0.17).unwrap(), 16, 7).unwrap().len(), 384);
    }

    #[test]
    fn weights_are_nonnegative_and_vanish_at_vertices() {
        let grid = build_grid(&Cell::puzzle(0.22, 0.17).unwrap(), 8, 7).unwrap();
        for (j, nd) in grid.nodes().iter().enumerate() {
            assert!(nd.weight >= 0.0);
            assert_eq!(nd.weight == 0.0, j % 16 == 0, "node {j}");
        }
    }

    #[test]
    fn square_area_from_boundary() {
        let errs: Vec<f64> = [8, 16, 32]
            .iter()
            .map(|&n| {
                let grid = build_grid(&Cell::square(), n, 7).unwrap();
                let z = grid.cell().shift();
                (grid.integrate_fn(|nd| 0.5 * (nd.point - z).dot(nd.normal)) - 1.0).abs()
            })
            .collect();
        assert!(errs[2] <= 1e-9);
        assert!(errs[0] / errs[1] > 1e2);
    }

    #[test]
    fn odd_integrand_on_circle() {
        let grid = build_grid(&Cell::circle(), 32, 7).unwrap();
        assert!(grid.integrate_fn(|nd| nd.point.y).abs() < 1e-12);
        let errs: Vec<f64> = [8, 16].iter().map(|&n| (build_grid(&Cell::circle(), n, 7).unwrap().perimeter() - 2.0 * PI).abs()).collect();
        assert!(errs[1] < 1e-12 || errs[0] / errs[1] > 1e2);
    }

    #[test]
    fn length_mismatch() {
        let grid = build_grid(&Cell::square(), 4, 7).unwrap();
        assert!(matches!(grid.integrate(&[1.0; 3]), Err(Error::GridMismatch { expected: 32, found: 3 })));
    }
}
