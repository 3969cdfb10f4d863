//! Second-kind boundary integral equation for the interior Neumann problem.
//!
//! For `Δu = 0` in `K` with `∂u/∂n = g`, collocating Green's representation
//! at a boundary node `x_i` and writing the double layer in subtracted form
//! gives
//!
//! ```text
//! Σ_{j≠i} K(x_i, y_j) (u_j - u_i) w_j + Σ_j u_j w_j = (S g)_i
//! ```
//!
//! where `K = ∂G/∂n_y` for `G = -ln|x-y| / 2π` and `S` is the single layer.
//! The subtracted form absorbs the interior angle at vertex nodes, so
//! corners need no special unknowns, and the rank-one term pins the
//! additive constant. The single layer uses the trigonometric product rule
//! for the periodic logarithm in the global parameter `τ`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kressquad::BoundaryGrid;
use crate::trace::{TraceKind, TraceSamples};
use crate::vec2::Vec2;

/// `∂G/∂n_y = (x-y)·n_y / (2π |x-y|²)`.
pub fn kernel_dgdn(x: Vec2, y: Vec2, ny: Vec2) -> f64 {
    let d = x - y;
    d.dot(ny) / (2.0 * PI * d.norm_sq())
}

/// Limit of [`kernel_dgdn`] as `x → y` along an edge with signed curvature `κ`.
pub fn kernel_dgdn_diagonal(curvature: f64) -> f64 {
    -curvature / (4.0 * PI)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Relative residual target for GMRES.
    pub tol: f64,
    pub max_iter: usize,
    /// Relative tolerance on the total flux `∫ g ds`.
    pub compat_rtol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-13, max_iter: 300, compat_rtol: 1e-8 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    /// True relative residual `|b - Ax| / |b|` of the returned solution.
    pub residual: f64,
    /// `∫ g ds` before it was removed.
    pub compat_defect: f64,
}

#[derive(Clone, Debug)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unrestarted GMRES from a zero initial guess, with modified Gram-Schmidt
/// and Givens rotations.
pub fn gmres(apply: impl Fn(&[f64]) -> Vec<f64>, b: &[f64], tol: f64, max_iter: usize) -> Result<GmresOutcome> {
    let n = b.len();
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return Ok(GmresOutcome { x: vec![0.0; n], iterations: 0, residual: 0.0 });
    }
    let max_iter = max_iter.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = vec![b.iter().map(|v| v / bnorm).collect()];
    let mut hess: Vec<Vec<f64>> = Vec::new();
    let (mut cs, mut sn): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut rhs = vec![bnorm];
    let mut k = 0;
    while k < max_iter {
        let mut w = apply(&basis[k]);
        let mut col = vec![0.0; k + 2];
        for (i, v) in basis.iter().enumerate() {
            let hij = dot(&w, v);
            col[i] = hij;
            w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= hij * vi);
        }
        let wnorm = norm(&w);
        col[k + 1] = wnorm;
        for i in 0..k {
            let (a, b) = (col[i], col[i + 1]);
            col[i] = cs[i] * a + sn[i] * b;
            col[i + 1] = -sn[i] * a + cs[i] * b;
        }
        let r = col[k].hypot(col[k + 1]);
        let (c, s) = if r == 0.0 { (1.0, 0.0) } else { (col[k] / r, col[k + 1] / r) };
        cs.push(c);
        sn.push(s);
        col[k] = r;
        col[k + 1] = 0.0;
        rhs.push(-s * rhs[k]);
        rhs[k] *= c;
        hess.push(col);
        k += 1;
        if rhs[k].abs() <= tol * bnorm || wnorm == 0.0 {
            break;
        }
        basis.push(w.into_iter().map(|v| v / wnorm).collect());
    }
    // back substitution on the triangular factor
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut s = rhs[i];
        for (j, yj) in y.iter().enumerate().skip(i + 1) {
            s -= hess[j][i] * yj;
        }
        y[i] = s / hess[i][i];
    }
    let mut x = vec![0.0; n];
    for (v, yi) in basis.iter().zip(&y) {
        x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += yi * vi);
    }
    let ax = apply(&x);
    let residual = norm(&b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect::<Vec<_>>()) / bnorm;
    if residual > tol.max(1e-15) * 10.0 && k >= max_iter {
        return Err(Error::NoConvergence { iterations: k, residual });
    }
    Ok(GmresOutcome { x, iterations: k, residual })
}

/// Periodic log-kernel weights `R_k` for `∫ ln(4 sin²((t-τ)/2)) f(τ) dτ`
/// on `2M` equispaced nodes, indexed by node distance `k`.
fn log_weights(total: usize) -> Vec<f64> {
    let m = total / 2;
    let mf = m as f64;
    let h = std::f64::consts::TAU / total as f64;
    (0..total)
        .map(|k| {
            let delta = k as f64 * h;
            let sum: f64 = (1..m).map(|j| (j as f64 * delta).cos() / j as f64).sum();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / mf * sum - PI / (mf * mf) * sign
        })
        .collect()
}

/// Assembled system and single-layer matrices for one grid.
#[derive(Debug)]
pub struct NystromOperator {
    grid_id: u64,
    size: usize,
    weights: Vec<f64>,
    perimeter: f64,
    system: Vec<f64>,
    single: Vec<f64>,
}

impl NystromOperator {
    pub fn new(grid: &BoundaryGrid) -> Self {
        let nodes = grid.nodes();
        let size = nodes.len();
        let h = grid.h();
        let rweights = log_weights(size);

        let mut system = vec![0.0; size * size];
        system.par_chunks_mut(size).enumerate().for_each(|(i, row)| {
            let xi = nodes[i].point;
            let mut diag = 0.0;
            for (j, nd) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let kw = if nd.weight == 0.0 { 0.0 } else { kernel_dgdn(xi, nd.point, nd.normal) * nd.weight };
                row[j] = kw + nd.weight;
                diag -= kw;
            }
            row[i] = diag + nodes[i].weight;
        });

        let mut single = vec![0.0; size * size];
        single.par_chunks_mut(size).enumerate().for_each(|(i, row)| {
            let (xi, ti) = (nodes[i].point, nodes[i].tau);
            for (j, nd) in nodes.iter().enumerate() {
                if nd.tau_speed == 0.0 {
                    continue;
                }
                let smooth = if j == i {
                    nd.tau_speed.ln()
                } else {
                    let s = (2.0 * (0.5 * (ti - nd.tau)).sin()).abs();
                    (xi.dist(nd.point) / s).ln()
                };
                let r = rweights[(i + size - j) % size];
                row[j] = -(0.5 * r + h * smooth) * nd.tau_speed / (2.0 * PI);
            }
        });

        NystromOperator { grid_id: grid.id(), size, weights: grid.weights(), perimeter: grid.perimeter(), system, single }
    }

    pub fn grid_id(&self) -> u64 {
        self.grid_id
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn matvec(matrix: &[f64], size: usize, x: &[f64]) -> Vec<f64> {
        matrix.par_chunks(size).map(|row| dot(row, x)).collect()
    }

    /// `∫ G(x_i, y) g(y) ds(y)` at every node.
    pub fn single_layer(&self, g: &[f64]) -> Vec<f64> {
        Self::matvec(&self.single, self.size, g)
    }

    /// Zero-mean Dirichlet trace of the harmonic function with Neumann data `g`.
    pub fn solve(&self, g: &[f64], opts: &SolverOptions) -> Result<(Vec<f64>, SolveReport)> {
        if g.len() != self.size {
            return Err(Error::GridMismatch { expected: self.size, found: g.len() });
        }
        let defect = dot(g, &self.weights);
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tolerance = opts.compat_rtol * (1.0 + gmax * self.perimeter);
        if defect.abs() > tolerance {
            return Err(Error::Compatibility { defect, tolerance });
        }
        let shift = defect / self.perimeter;
        let g: Vec<f64> = g.iter().map(|v| v - shift).collect();
        let rhs = self.single_layer(&g);
        let out = gmres(|x| Self::matvec(&self.system, self.size, x), &rhs, opts.tol, opts.max_iter)?;
        let mut u = out.x;
        let mean = dot(&u, &self.weights) / self.perimeter;
        u.iter_mut().for_each(|v| *v -= mean);
        Ok((u, SolveReport { iterations: out.iterations, residual: out.residual, compat_defect: defect }))
    }

    pub fn check_grid(&self, grid: &BoundaryGrid) -> Result<()> {
        if grid.id() != self.grid_id {
            return Err(Error::GridMismatch { expected: self.size, found: grid.len() });
        }
        Ok(())
    }
}

pub fn single_layer_apply(g: &TraceSamples, grid: &BoundaryGrid) -> Result<TraceSamples> {
    g.check_grid(grid)?;
    let op = NystromOperator::new(grid);
    TraceSamples::new(grid, TraceKind::Dirichlet, op.single_layer(g.values()))
}

/// Interior Neumann problem on a grid.
#[derive(Debug)]
pub struct NeumannProblem<'a> {
    pub grid: &'a BoundaryGrid,
    pub g: TraceSamples,
}

pub fn solve_neumann(problem: &NeumannProblem<'_>, opts: &SolverOptions) -> Result<(TraceSamples, SolveReport)> {
    problem.g.check_grid(problem.grid)?;
    problem.g.require(TraceKind::Neumann)?;
    let op = NystromOperator::new(problem.grid);
    let (u, report) = op.solve(problem.g.values(), opts)?;
    Ok((TraceSamples::new(problem.grid, TraceKind::Dirichlet, u)?, report))
}
