use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::function::VmFunction;
use crate::cellgeom::Cell;
use crate::error::Result;
use crate::harmonic::{HarmonicAntiLaplacian, HarmonicSolver};
use crate::kressquad::BoundaryGrid;
use crate::nystrom::{SolveReport, SolverOptions};
use crate::polyalg::poly_volume_integral;
use crate::Poly;

/// Computed once on first use, errors included.
#[derive(Debug)]
struct Lazy<T>(Mutex<Option<Arc<T>>>);

impl<T> Default for Lazy<T> {
    fn default() -> Self {
        Lazy(Mutex::new(None))
    }
}

impl<T> Lazy<T> {
    fn get_or_try(&self, init: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let mut slot = self.0.lock().expect("lazy slot");
        if let Some(v) = slot.as_ref() {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(init()?);
        *slot = Some(Arc::clone(&v));
        Ok(v)
    }
}

/// Per-function boundary data: `P` with `ΔP = p`, `P*` with `ΔP* = P`, and
/// the harmonic part `v - P` through its trace and conjugate.
#[derive(Debug)]
struct Pack {
    f: Vec<f64>,
    p: Poly,
    big_p: Poly,
    big_p_star: Poly,
    h: Vec<f64>,
    h_zero: bool,
    h_conj: Vec<f64>,
    f_conj: Lazy<Vec<f64>>,
    f_ds: Lazy<Vec<f64>>,
    anti: Lazy<HarmonicAntiLaplacian>,
}

/// Pair of sample vectors integrated against each other.
fn dot_w(grid: &BoundaryGrid, a: &[f64], b: &[f64]) -> f64 {
    grid.nodes().iter().zip(a.iter().zip(b)).map(|(nd, (x, y))| nd.weight * x * y).sum()
}

/// `∮ (u ∂q/∂n - q ∂u/∂n) ds` for a harmonic `u` with conjugate `û` and a
/// polynomial `q`, using `∮ q ∂u/∂n = -∮ û ∂q/∂s`.
fn green_pair(grid: &BoundaryGrid, u: &[f64], u_conj: &[f64], q: &Poly) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (gx, gy) = q.grad();
    grid.nodes()
        .iter()
        .enumerate()
        .filter(|(_, nd)| nd.weight != 0.0)
        .map(|(j, nd)| {
            let g = crate::Vec2::new(gx.eval(nd.point), gy.eval(nd.point));
            nd.weight * (u[j] * g.dot(nd.normal) + u_conj[j] * g.dot(nd.tangent))
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// `∫ v w dx`
    Mass,
    /// `∫ ∇v·∇w dx`
    Stiffness,
}

/// Symmetric matrix of pairwise products over a basis.
#[derive(Clone, Debug)]
pub struct LocalMatrix {
    pub kind: ProductKind,
    pub names: Vec<String>,
    /// Row-major, symmetrized.
    pub entries: Vec<f64>,
    /// `max |a_ij - a_ji|` before symmetrization.
    pub raw_asymmetry: f64,
}

impl LocalMatrix {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }
}

/// Quadrature state for one cell at one resolution: grid, Neumann solver
/// and the per-function cache.
#[derive(Debug)]
pub struct CellQuadrature {
    solver: HarmonicSolver,
    packs: Mutex<HashMap<u64, Arc<Pack>>>,
}

impl CellQuadrature {
    pub fn new(cell: &Cell, n: usize, sigma: u32, opts: SolverOptions) -> Result<Self> {
        let grid = Arc::new(BoundaryGrid::new(cell, n, sigma)?);
        Ok(Self::from_grid(grid, opts))
    }

    pub fn from_grid(grid: Arc<BoundaryGrid>, opts: SolverOptions) -> Self {
        CellQuadrature { solver: HarmonicSolver::new(grid, opts), packs: Mutex::new(HashMap::new()) }
    }

    pub fn grid(&self) -> &BoundaryGrid {
        self.solver.grid()
    }

    pub fn solver(&self) -> &HarmonicSolver {
        &self.solver
    }

    /// Every Neumann solve performed so far.
    pub fn reports(&self) -> Vec<SolveReport> {
        self.solver.reports()
    }

    fn center(&self) -> crate::Vec2 {
        self.grid().cell().shift()
    }

    fn pack(&self, v: &VmFunction) -> Result<Arc<Pack>> {
        if let Some(p) = self.packs.lock().expect("pack cache").get(&v.id()) {
            return Ok(Arc::clone(p));
        }
        let grid = self.grid();
        let p = v.laplacian().recentered(self.center());
        let big_p = p.anti_laplacian();
        let big_p_star = big_p.anti_laplacian();
        let f = v.trace().sample(grid);
        let h: Vec<f64> = if big_p.is_zero() {
            f.clone()
        } else {
            f.iter().zip(big_p.trace_on(grid)).map(|(a, b)| a - b).collect()
        };
        let h_zero = h.iter().all(|&x| x == 0.0);
        let h_conj = if h_zero { vec![0.0; h.len()] } else { self.solver.harmonic_conjugate(&h)? };
        let pack = Arc::new(Pack { f, p, big_p, big_p_star, h, h_zero, h_conj, f_conj: Lazy::default(), f_ds: Lazy::default(), anti: Lazy::default() });
        let mut cache = self.packs.lock().expect("pack cache");
        Ok(Arc::clone(cache.entry(v.id()).or_insert(pack)))
    }

    /// Conjugate of the harmonic extension of the trace.
    fn trace_conj(&self, pk: &Pack) -> Result<Arc<Vec<f64>>> {
        pk.f_conj.get_or_try(|| {
            if pk.big_p.is_zero() {
                Ok(pk.h_conj.clone())
            } else {
                self.solver.harmonic_conjugate(&pk.f)
            }
        })
    }

    fn trace_ds(&self, pk: &Pack) -> Result<Arc<Vec<f64>>> {
        pk.f_ds.get_or_try(|| Ok(self.solver.tangential_derivative(&pk.f)))
    }

    fn anti(&self, pk: &Pack) -> Result<Arc<HarmonicAntiLaplacian>> {
        pk.anti.get_or_try(|| self.solver.anti_laplacian(&pk.h, Some(&pk.h_conj)))
    }

    /// `∫_K ∇v·∇w dx` through the splitting `v = v∂ + v_K`; the mixed
    /// pieces vanish identically and are never evaluated.
    pub fn h1_product(&self, v: &VmFunction, w: &VmFunction) -> Result<f64> {
        let boundary_part = !v.has_zero_trace() && !w.has_zero_trace();
        let interior_part = !v.is_harmonic() && !w.is_harmonic();
        if !boundary_part && !interior_part {
            return Ok(0.0);
        }
        let grid = self.grid();
        let (pv, pw) = (self.pack(v)?, self.pack(w)?);
        let mut total = 0.0;
        if boundary_part {
            // ∫ ∇v∂·∇w∂ = ∮ ∂v̂∂/∂s g ds = -∮ v̂∂ ∂g/∂s ds
            total -= dot_w(grid, &self.trace_conj(&pv)?, &self.trace_ds(&pw)?);
        }
        if interior_part {
            // ∫ ∇v_K·∇w_K = ∮ ∂v_K/∂n Q ds - ∫ p Q dx, where v_K = P - (harmonic
            // extension of P) and ∮ Q ∂u/∂n = -∮ û ∂Q/∂t for harmonic u
            let f_conj = self.trace_conj(&pv)?;
            let (gx, gy) = pw.big_p.grad();
            let p_dn = pv.big_p.normal_derivative_on(grid);
            let q = pw.big_p.trace_on(grid);
            total += grid
                .nodes()
                .iter()
                .enumerate()
                .map(|(j, nd)| {
                    let q_dt = gx.eval(nd.point) * nd.tangent.x + gy.eval(nd.point) * nd.tangent.y;
                    nd.weight * (p_dn[j] * q[j] + (f_conj[j] - pv.h_conj[j]) * q_dt)
                })
                .sum::<f64>();
            total -= poly_volume_integral(&pv.p.mul(&pw.big_p)?, grid);
        }
        Ok(total)
    }

    /// `∫_K v w dx` from boundary data only.
    pub fn l2_product(&self, v: &VmFunction, w: &VmFunction) -> Result<f64> {
        let z = self.center();
        match (v.as_polynomial(), w.as_polynomial()) {
            (Some(a), Some(b)) => return Ok(poly_volume_integral(&a.recentered(z).mul(&b.recentered(z))?, self.grid())),
            (None, Some(r)) => return self.l2_against_polynomial(v, &r.recentered(z)),
            (Some(r), None) => return self.l2_against_polynomial(w, &r.recentered(z)),
            (None, None) => {}
        }
        let grid = self.grid();
        let (pv, pw) = (self.pack(v)?, self.pack(w)?);
        // the anti-Laplacian Φ of the harmonic part is taken on whichever
        // side has one
        let (pv, pw) = if pv.h_zero { (pw, pv) } else { (pv, pw) };
        let mut total = poly_volume_integral(&pv.big_p.mul(&pw.big_p)?, grid);
        if !pv.h_zero && !pw.h_zero {
            let anti = self.anti(&pv)?;
            // ∮ Φ ∂h/∂n = -∮ ĥ ∂Φ/∂t
            total += dot_w(grid, &anti.big_phi_dn, &pw.h) + dot_w(grid, &anti.big_phi_dt, &pw.h_conj);
        }
        // ∫ (v-P) Q = ∮ ((v-P) ∂Q*/∂n - Q* ∂(v-P)/∂n)
        total += green_pair(grid, &pv.h, &pv.h_conj, &pw.big_p_star);
        total += green_pair(grid, &pw.h, &pw.h_conj, &pv.big_p_star);
        Ok(total)
    }

    /// `∫ v r dx = ∮ ((v-P) ∂R/∂n - R ∂(v-P)/∂n) ds + ∫ P r dx` with `ΔR = r`.
    fn l2_against_polynomial(&self, v: &VmFunction, r: &Poly) -> Result<f64> {
        let grid = self.grid();
        let pv = self.pack(v)?;
        let big_r = r.anti_laplacian();
        Ok(green_pair(grid, &pv.h, &pv.h_conj, &big_r) + poly_volume_integral(&pv.big_p.mul(r)?, grid))
    }

    pub fn product(&self, kind: ProductKind, v: &VmFunction, w: &VmFunction) -> Result<f64> {
        match kind {
            ProductKind::Mass => self.l2_product(v, w),
            ProductKind::Stiffness => self.h1_product(v, w),
        }
    }

    /// All pairwise products over `basis`, symmetrized.
    pub fn assemble_local_matrix(&self, basis: &[VmFunction], kind: ProductKind) -> Result<LocalMatrix> {
        let dim = basis.len();
        // packs first, in parallel, so the pair loop only reads the cache
        basis.par_iter().try_for_each(|v| self.pack(v).map(|_| ()))?;
        let raw: Vec<f64> = (0..dim * dim)
            .into_par_iter()
            .map(|k| self.product(kind, &basis[k / dim], &basis[k % dim]))
            .collect::<Result<_>>()?;
        let mut entries = raw.clone();
        let mut raw_asymmetry = 0.0f64;
        for i in 0..dim {
            for j in 0..i {
                let (a, b) = (raw[i * dim + j], raw[j * dim + i]);
                raw_asymmetry = raw_asymmetry.max((a - b).abs());
                entries[i * dim + j] = 0.5 * (a + b);
                entries[j * dim + i] = 0.5 * (a + b);
            }
        }
        Ok(LocalMatrix { kind, names: basis.iter().map(|v| v.name().to_string()).collect(), entries, raw_asymmetry })
    }
}

pub fn h1_product(v: &VmFunction, w: &VmFunction, quad: &CellQuadrature) -> Result<f64> {
    quad.h1_product(v, w)
}

pub fn l2_product(v: &VmFunction, w: &VmFunction, quad: &CellQuadrature) -> Result<f64> {
    quad.l2_product(v, w)
}

pub fn assemble_local_matrix(basis: &[VmFunction], quad: &CellQuadrature, kind: ProductKind) -> Result<LocalMatrix> {
    quad.assemble_local_matrix(basis, kind)
}
