//! Harmonic conjugates, Dirichlet-to-Neumann maps and anti-Laplacians of
//! harmonic functions, all computed from boundary data alone.
//!
//! With `n` the tangent rotated by `-π/2`, the Cauchy-Riemann equations give
//! `∂φ̂/∂n = -∂φ/∂t` and `∂φ/∂n = ∂φ̂/∂t`, so one Neumann solve yields the
//! conjugate and a spectral derivative of it yields the normal derivative.

use std::sync::{Arc, Mutex};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::kressquad::BoundaryGrid;
use crate::nystrom::{NystromOperator, SolveReport, SolverOptions};
use crate::trace::{TraceKind, TraceSamples};

/// `d/dτ` of periodic samples on the uniform `τ` grid, by FFT.
pub fn periodic_derivative(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        let freq = if 2 * k < n {
            k as f64
        } else if 2 * k == n {
            0.0
        } else {
            k as f64 - n as f64
        };
        *c = Complex::new(-c.im * freq, c.re * freq);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

/// Arclength derivative `∂f/∂t` at every node; zero at the vertex nodes.
pub fn tangential_derivative_values(grid: &BoundaryGrid, f: &[f64]) -> Vec<f64> {
    periodic_derivative(f)
        .into_iter()
        .zip(grid.nodes())
        .map(|(d, nd)| if nd.tau_speed == 0.0 { 0.0 } else { d / nd.tau_speed })
        .collect()
}

pub fn tangential_derivative(f: &TraceSamples, grid: &BoundaryGrid) -> Result<TraceSamples> {
    f.check_grid(grid)?;
    TraceSamples::new(grid, TraceKind::Tangential, tangential_derivative_values(grid, f.values()))
}

/// Boundary data of `φ`, its conjugate, the two auxiliary conjugate pairs
/// and the resulting anti-Laplacian `Φ` with `ΔΦ = φ`.
#[derive(Clone, Debug)]
pub struct HarmonicAntiLaplacian {
    pub phi: Vec<f64>,
    pub phi_hat: Vec<f64>,
    pub rho: Vec<f64>,
    pub rho_hat: Vec<f64>,
    /// `Φ = ((x-z)₁ρ + (x-z)₂ρ̂) / 4` with `z` the cell shift.
    pub big_phi: Vec<f64>,
    pub big_phi_dn: Vec<f64>,
    /// `∂Φ/∂t`, exact from the samples since `∇ρ = (φ, -φ̂)` and `∇ρ̂ = (φ̂, φ)`.
    pub big_phi_dt: Vec<f64>,
}

/// Neumann solver bound to one grid, recording every solve.
#[derive(Debug)]
pub struct HarmonicSolver {
    grid: Arc<BoundaryGrid>,
    op: NystromOperator,
    opts: SolverOptions,
    log: Mutex<Vec<SolveReport>>,
}

impl HarmonicSolver {
    pub fn new(grid: Arc<BoundaryGrid>, opts: SolverOptions) -> Self {
        let op = NystromOperator::new(&grid);
        HarmonicSolver { grid, op, opts, log: Mutex::new(Vec::new()) }
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> Arc<BoundaryGrid> {
        Arc::clone(&self.grid)
    }

    pub fn options(&self) -> &SolverOptions {
        &self.opts
    }

    /// Reports of all solves so far, in completion order.
    pub fn reports(&self) -> Vec<SolveReport> {
        self.log.lock().expect("solve log").clone()
    }

    fn solve_with(&self, g: &[f64], opts: &SolverOptions) -> Result<Vec<f64>> {
        let (u, report) = self.op.solve(g, opts)?;
        self.log.lock().expect("solve log").push(report);
        Ok(u)
    }

    /// Zero-mean Dirichlet trace for Neumann data `g`.
    pub fn neumann_to_dirichlet(&self, g: &[f64]) -> Result<Vec<f64>> {
        self.solve_with(g, &self.opts)
    }

    /// Data built from tangential derivatives has zero flux analytically;
    /// its discrete flux is quadrature error and is always projected out.
    fn solve_derived(&self, g: &[f64]) -> Result<Vec<f64>> {
        let opts = SolverOptions { compat_rtol: f64::INFINITY, ..self.opts };
        self.solve_with(g, &opts)
    }

    pub fn tangential_derivative(&self, f: &[f64]) -> Vec<f64> {
        tangential_derivative_values(&self.grid, f)
    }

    /// Trace of `φ̂` from the trace of a harmonic `φ`.
    pub fn harmonic_conjugate(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.iter().all(|&v| v == f[0]) {
            return Ok(vec![0.0; f.len()]);
        }
        let g: Vec<f64> = self.tangential_derivative(f).into_iter().map(|v| -v).collect();
        self.solve_derived(&g)
    }

    /// `(φ̂, ∂φ/∂n)` from the trace of a harmonic `φ`.
    pub fn conjugate_and_normal_derivative(&self, f: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let conj = self.harmonic_conjugate(f)?;
        let dn = self.tangential_derivative(&conj);
        Ok((conj, dn))
    }

    pub fn dirichlet_to_neumann(&self, f: &[f64]) -> Result<Vec<f64>> {
        Ok(self.conjugate_and_normal_derivative(f)?.1)
    }

    /// Anti-Laplacian of the harmonic function with trace `f`; `conj` may
    /// supply an already computed conjugate trace.
    pub fn anti_laplacian(&self, f: &[f64], conj: Option<&[f64]>) -> Result<HarmonicAntiLaplacian> {
        let phi_hat = match conj {
            Some(c) => c.to_vec(),
            None => self.harmonic_conjugate(f)?,
        };
        let nodes = self.grid.nodes();
        let g_rho: Vec<f64> = nodes.iter().enumerate().map(|(j, nd)| f[j] * nd.normal.x - phi_hat[j] * nd.normal.y).collect();
        let g_rho_hat: Vec<f64> = nodes.iter().enumerate().map(|(j, nd)| phi_hat[j] * nd.normal.x + f[j] * nd.normal.y).collect();
        let (rho, rho_hat) = rayon::join(|| self.solve_derived(&g_rho), || self.solve_derived(&g_rho_hat));
        let (rho, rho_hat) = (rho?, rho_hat?);
        let z = self.grid.cell().shift();
        let mut big_phi = Vec::with_capacity(nodes.len());
        let mut big_phi_dn = Vec::with_capacity(nodes.len());
        let mut big_phi_dt = Vec::with_capacity(nodes.len());
        for (j, nd) in nodes.iter().enumerate() {
            let x = nd.point - z;
            big_phi.push(0.25 * (x.x * rho[j] + x.y * rho_hat[j]));
            let gx = rho[j] + x.x * f[j] + x.y * phi_hat[j];
            let gy = rho_hat[j] - x.x * phi_hat[j] + x.y * f[j];
            big_phi_dn.push(0.25 * (gx * nd.normal.x + gy * nd.normal.y));
            big_phi_dt.push(0.25 * (gx * nd.tangent.x + gy * nd.tangent.y));
        }
        Ok(HarmonicAntiLaplacian { phi: f.to_vec(), phi_hat, rho, rho_hat, big_phi, big_phi_dn, big_phi_dt })
    }
}

pub fn harmonic_conjugate(solver: &HarmonicSolver, f: &TraceSamples) -> Result<TraceSamples> {
    f.check_grid(solver.grid())?;
    f.require(TraceKind::Dirichlet)?;
    TraceSamples::new(solver.grid(), TraceKind::Dirichlet, solver.harmonic_conjugate(f.values())?)
}

pub fn dirichlet_to_neumann(solver: &HarmonicSolver, f: &TraceSamples) -> Result<TraceSamples> {
    f.check_grid(solver.grid())?;
    f.require(TraceKind::Dirichlet)?;
    TraceSamples::new(solver.grid(), TraceKind::Neumann, solver.dirichlet_to_neumann(f.values())?)
}

pub fn anti_laplacian_harmonic(solver: &HarmonicSolver, f: &TraceSamples) -> Result<HarmonicAntiLaplacian> {
    f.check_grid(solver.grid())?;
    f.require(TraceKind::Dirichlet)?;
    solver.anti_laplacian(f.values(), None)
}
