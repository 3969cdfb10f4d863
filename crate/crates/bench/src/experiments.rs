//! Experiment definitions and the row runner.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use curvquad::cellgeom::Cell;
use curvquad::nystrom::SolverOptions;
use curvquad::polyalg::MultiIndex;
use curvquad::vmspace::{
    make_arc_linear_fn_with, make_edge_fn_product, make_edge_fn_product_with, make_monomial_bubble, make_vertex_fn,
    make_vertex_fn_with, ApexSide, CellQuadrature, EdgeSampler, TraceSpec, VmFunction,
};
use curvquad::{Poly, Vec2};

use crate::references::{bubble_pair, ref_pacman, square_pair, PacmanPair, PairReference, ReferenceValue, SquarePair};
use crate::BenchError;

pub const PACMAN_MU: f64 = 4.0 / 7.0;
pub const PACMAN_NU: f64 = 2.0 / 7.0;
pub const PUZZLE_RADIUS: f64 = 0.22;
pub const PUZZLE_OFFSET: f64 = 0.17;

/// Bubble rows of the unit-square table.
pub const BUBBLE_ROWS: [((u32, u32), (u32, u32)); 7] =
    [((0, 0), (0, 0)), ((1, 0), (0, 0)), ((1, 1), (1, 0)), ((2, 1), (0, 2)), ((4, 1), (3, 2)), ((5, 1), (3, 3)), ((4, 2), (4, 2))];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Experiment {
    Area,
    SquareBasis,
    SquareBubble,
    Pacman,
    Puzzle,
}

impl Experiment {
    pub const ALL: [Experiment; 5] =
        [Experiment::Area, Experiment::SquareBasis, Experiment::SquareBubble, Experiment::Pacman, Experiment::Puzzle];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Area => "area",
            Experiment::SquareBasis => "square-basis",
            Experiment::SquareBubble => "square-bubble",
            Experiment::Pacman => "pacman",
            Experiment::Puzzle => "puzzle",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| BenchError::Spec(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Product {
    L2,
    H1,
}

impl Product {
    pub fn name(self) -> &'static str {
        match self {
            Product::L2 => "L2",
            Product::H1 => "H1",
        }
    }
}

impl FromStr for Product {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L2" => Ok(Product::L2),
            "H1" => Ok(Product::H1),
            _ => Err(BenchError::Spec(format!("unknown product `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub n_values: Vec<usize>,
    pub sigma: u32,
    pub gmres_tol: f64,
    pub gmres_max_iter: usize,
    /// Replaces the built-in cells of the area experiment.
    pub cell_file: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentSpec { experiment, n_values: vec![4, 8, 16, 32, 64], sigma: 7, gmres_tol: 1e-13, gmres_max_iter: 300, cell_file: None }
    }

    pub fn with_n(mut self, n_values: &[usize]) -> Self {
        self.n_values = n_values.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.n_values.is_empty() {
            return Err(BenchError::Spec("no n values given".into()));
        }
        if self.n_values.contains(&0) || self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::Spec(format!("n values must be positive and increasing, got {:?}", self.n_values)));
        }
        if self.sigma < 2 {
            return Err(BenchError::Spec(format!("sigma must be at least 2, got {}", self.sigma)));
        }
        if !(self.gmres_tol > 0.0 && self.gmres_tol < 1.0) {
            return Err(BenchError::Spec(format!("gmres tolerance must lie in (0, 1), got {}", self.gmres_tol)));
        }
        if self.gmres_max_iter == 0 {
            return Err(BenchError::Spec("gmres iteration limit must be positive".into()));
        }
        if self.cell_file.is_some() && self.experiment != Experiment::Area {
            return Err(BenchError::Spec(format!("--cell-file only applies to the area experiment, not {}", self.experiment)));
        }
        Ok(())
    }
}

/// One computed table entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub experiment: Experiment,
    pub cell: String,
    pub pair: String,
    pub product: Product,
    pub n: usize,
    pub sigma: u32,
    pub computed: f64,
    pub reference: ReferenceValue,
    /// Error against the reference, or the successive difference
    /// `|I(n) - I(n_prev)|` when there is no reference.
    pub abs_error: Option<f64>,
    pub runtime_ms: f64,
    pub failure: Option<String>,
}

/// Neumann solve statistics for one cell at one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverHealth {
    pub experiment: Experiment,
    pub cell: String,
    pub n: usize,
    pub solves: usize,
    pub max_iterations: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOutput {
    pub rows: Vec<Row>,
    pub health: Vec<SolverHealth>,
}

impl RunOutput {
    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.failure.is_some())
    }

    pub fn find(&self, cell: &str, pair: &str, product: Product, n: usize) -> Option<&Row> {
        self.rows.iter().find(|r| r.cell == cell && r.pair == pair && r.product == product && r.n == n)
    }
}

struct PairCase {
    label: String,
    v: VmFunction,
    w: VmFunction,
    products: Vec<(Product, ReferenceValue)>,
}

impl PairCase {
    fn both(label: impl Into<String>, v: &VmFunction, w: &VmFunction, r: PairReference) -> Self {
        PairCase { label: label.into(), v: v.clone(), w: w.clone(), products: vec![(Product::L2, r.l2), (Product::H1, r.h1)] }
    }
}

struct CellCase {
    cell: Cell,
    pairs: Vec<PairCase>,
}

fn unit_trace(cell: &Cell) -> VmFunction {
    VmFunction::harmonic("1", TraceSpec::Polynomial(Poly::constant(cell.shift(), 1.0)))
}

fn area_cases(spec: &ExperimentSpec) -> Result<Vec<CellCase>, BenchError> {
    let case = |cell: Cell, area: ReferenceValue| {
        let one = unit_trace(&cell);
        CellCase { pairs: vec![PairCase { label: "1,1".into(), v: one.clone(), w: one, products: vec![(Product::L2, area)] }], cell }
    };
    if let Some(path) = &spec.cell_file {
        return Ok(vec![case(Cell::from_cell_file(path)?, ReferenceValue::none())]);
    }
    Ok(vec![
        case(Cell::square(), ReferenceValue::exact(1.0)),
        case(Cell::circle(), ReferenceValue::exact(PI)),
        // tabs and blanks are congruent, so the area is that of the square
        case(Cell::puzzle(PUZZLE_RADIUS, PUZZLE_OFFSET)?, ReferenceValue::exact(1.0)),
    ])
}

fn square_basis_cases() -> Result<Vec<CellCase>, BenchError> {
    let cell = Cell::square();
    let v = (0..4).map(|i| make_vertex_fn(&cell, i)).collect::<Result<Vec<_>, _>>()?;
    let w = (0..4).map(|i| make_edge_fn_product(&cell, i)).collect::<Result<Vec<_>, _>>()?;
    let b = make_monomial_bubble(&cell, MultiIndex::new(0, 0));
    let pairs = SquarePair::ALL
        .into_iter()
        .map(|p| {
            let (label, x, y) = match p {
                SquarePair::VjVj => ("v0,v0", &v[0], &v[0]),
                SquarePair::VjVjNext => ("v0,v1", &v[0], &v[1]),
                SquarePair::VjVjPrev => ("v0,v3", &v[0], &v[3]),
                SquarePair::VjVjOpposite => ("v0,v2", &v[0], &v[2]),
                SquarePair::V0W1 => ("v0,w1", &v[0], &w[1]),
                SquarePair::V1W1 => ("v1,w1", &v[1], &w[1]),
                SquarePair::WjWj => ("w0,w0", &w[0], &w[0]),
                SquarePair::BubbleBubble => ("b,b", &b, &b),
                SquarePair::VjBubble => ("v0,b", &v[0], &b),
                SquarePair::WjBubble => ("w0,b", &w[0], &b),
            };
            PairCase::both(label, x, y, square_pair(p))
        })
        .collect();
    Ok(vec![CellCase { cell, pairs }])
}

/// Labels bubble pairs as `a1a2,b1b2`.
pub fn bubble_label(alpha: (u32, u32), beta: (u32, u32)) -> String {
    format!("{}{},{}{}", alpha.0, alpha.1, beta.0, beta.1)
}

fn square_bubble_cases() -> Vec<CellCase> {
    let cell = Cell::square();
    let pairs = BUBBLE_ROWS
        .iter()
        .map(|&(a, b)| {
            let (ma, mb) = (MultiIndex::new(a.0, a.1), MultiIndex::new(b.0, b.1));
            let (va, vb) = (make_monomial_bubble(&cell, ma), make_monomial_bubble(&cell, mb));
            PairCase::both(bubble_label(a, b), &va, &vb, bubble_pair(ma, mb))
        })
        .collect();
    vec![CellCase { cell, pairs }]
}

/// Trace of `r^a sin(aθ)` on the Pac-Man boundary, with the angle fixed
/// on the two straight edges.
fn pacman_sampler(mu: f64, a: f64) -> EdgeSampler {
    Arc::new(move |edge: usize, x: Vec2| {
        let r = x.norm();
        if r == 0.0 {
            return 0.0;
        }
        let theta = match edge {
            0 => 0.0,
            2 => PI / mu,
            _ => {
                let t = x.y.atan2(x.x);
                if t < -PI / 8.0 {
                    t + 2.0 * PI
                } else {
                    t
                }
            }
        };
        r.powf(a) * (a * theta).sin()
    })
}

/// The Pac-Man bubble `(1 - r²) r² sin θ sin(θ - π/μ)` through its Laplacian.
pub fn pacman_bubble(cell: &Cell, mu: f64) -> VmFunction {
    let (c, s) = ((PI / mu).cos(), (PI / mu).sin());
    let terms = [
        (MultiIndex::new(0, 0), 2.0 * c),
        (MultiIndex::new(2, 0), -2.0 * c),
        (MultiIndex::new(0, 2), -14.0 * c),
        (MultiIndex::new(1, 1), 12.0 * s),
    ];
    VmFunction::bubble("v3", Poly::from_terms(Vec2::ZERO, terms).recentered(cell.shift()))
}

fn pacman_cases() -> Result<Vec<CellCase>, BenchError> {
    let (mu, nu) = (PACMAN_MU, PACMAN_NU);
    let cell = Cell::pacman(mu)?;
    let v1 = VmFunction::harmonic("v1", TraceSpec::Sampler(pacman_sampler(mu, mu)));
    let v2 = VmFunction::harmonic("v2", TraceSpec::Sampler(pacman_sampler(mu, nu)));
    let v3 = pacman_bubble(&cell, mu);
    let pairs = PacmanPair::ALL
        .into_iter()
        .map(|p| {
            let (label, x, y) = match p {
                PacmanPair::V1V1 => ("v1,v1", &v1, &v1),
                PacmanPair::V1V2 => ("v1,v2", &v1, &v2),
                PacmanPair::V1V3 => ("v1,v3", &v1, &v3),
                PacmanPair::V2V3 => ("v2,v3", &v2, &v3),
            };
            Ok(PairCase::both(label, x, y, ref_pacman(mu, nu, p)?))
        })
        .collect::<Result<_, BenchError>>()?;
    Ok(vec![CellCase { cell, pairs }])
}

/// Puzzle rows. Arc functions `u0..u3` live on the arcs in edge order and
/// use the apex on the inner side of each chord.
fn puzzle_cases() -> Result<Vec<CellCase>, BenchError> {
    let side = ApexSide::Inward;
    let cell = Cell::puzzle(PUZZLE_RADIUS, PUZZLE_OFFSET)?;
    let v = (0..2).map(|i| make_vertex_fn_with(&cell, i, side)).collect::<Result<Vec<_>, _>>()?;
    let u = [1, 4, 7, 10].into_iter().map(|e| make_arc_linear_fn_with(&cell, e, side)).collect::<Result<Vec<_>, _>>()?;
    let w0 = make_edge_fn_product_with(&cell, 0, side)?;
    let b = make_monomial_bubble(&cell, MultiIndex::new(0, 0));
    let none = PairReference { l2: ReferenceValue::none(), h1: ReferenceValue::none() };
    let rows: [(&str, &VmFunction, &VmFunction); 9] = [
        ("v0,v0", &v[0], &v[0]),
        ("v0,v1", &v[0], &v[1]),
        ("v0,w0", &v[0], &w0),
        ("v1,u0", &v[1], &u[0]),
        ("u0,u0", &u[0], &u[0]),
        ("u0,u1", &u[0], &u[1]),
        ("b,b", &b, &b),
        ("v0,b", &v[0], &b),
        ("u3,b", &u[3], &b),
    ];
    let pairs = rows.iter().map(|(label, x, y)| PairCase::both(*label, x, y, none)).collect();
    Ok(vec![CellCase { cell, pairs }])
}

fn cases(spec: &ExperimentSpec) -> Result<Vec<CellCase>, BenchError> {
    match spec.experiment {
        Experiment::Area => area_cases(spec),
        Experiment::SquareBasis => square_basis_cases(),
        Experiment::SquareBubble => Ok(square_bubble_cases()),
        Experiment::Pacman => pacman_cases(),
        Experiment::Puzzle => puzzle_cases(),
    }
}

fn run_job(spec: &ExperimentSpec, case: &CellCase, n: usize) -> (Vec<Row>, Option<SolverHealth>) {
    let opts = SolverOptions { tol: spec.gmres_tol, max_iter: spec.gmres_max_iter, ..SolverOptions::default() };
    let cell_name = case.cell.name().to_string();
    let row = |pair: &PairCase, product: Product, reference: ReferenceValue| Row {
        experiment: spec.experiment,
        cell: cell_name.clone(),
        pair: pair.label.clone(),
        product,
        n,
        sigma: spec.sigma,
        computed: f64::NAN,
        reference,
        abs_error: None,
        runtime_ms: 0.0,
        failure: None,
    };
    let quad = match CellQuadrature::new(&case.cell, n, spec.sigma, opts) {
        Ok(q) => q,
        Err(e) => {
            let rows = case
                .pairs
                .iter()
                .flat_map(|p| p.products.iter().map(move |&(k, r)| (p, k, r)))
                .map(|(p, k, r)| Row { failure: Some(e.to_string()), ..row(p, k, r) })
                .collect();
            return (rows, None);
        }
    };
    let mut rows = Vec::new();
    for pair in &case.pairs {
        for &(product, reference) in &pair.products {
            let start = Instant::now();
            let result = match product {
                Product::L2 => quad.l2_product(&pair.v, &pair.w),
                Product::H1 => quad.h1_product(&pair.v, &pair.w),
            };
            let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut r = Row { runtime_ms, ..row(pair, product, reference) };
            match result {
                Ok(x) => {
                    r.computed = x;
                    r.abs_error = reference.is_available().then(|| (x - reference.value).abs());
                }
                Err(e) => r.failure = Some(e.to_string()),
            }
            rows.push(r);
        }
    }
    let reports = quad.reports();
    let health = SolverHealth {
        experiment: spec.experiment,
        cell: cell_name,
        n,
        solves: reports.len(),
        max_iterations: reports.iter().map(|r| r.iterations).max().unwrap_or(0),
        max_residual: reports.iter().map(|r| r.residual).fold(0.0, f64::max),
    };
    (rows, Some(health))
}

/// Fills in `|I(n) - I(n_prev)|` for rows without a reference.
fn successive_differences(rows: &mut [Row]) {
    for i in 0..rows.len() {
        if rows[i].reference.is_available() || rows[i].failure.is_some() {
            continue;
        }
        let prev = rows[..i]
            .iter()
            .rev()
            .find(|r| r.cell == rows[i].cell && r.pair == rows[i].pair && r.product == rows[i].product && r.failure.is_none());
        rows[i].abs_error = prev.map(|p| (rows[i].computed - p.computed).abs());
    }
}

/// Runs every `(cell, n)` job of the experiment, in parallel, and returns
/// rows in specification order: cell, pair, product, then `n`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunOutput, BenchError> {
    spec.validate()?;
    let cases = cases(spec)?;
    let jobs: Vec<(usize, usize)> = (0..cases.len()).flat_map(|c| spec.n_values.iter().map(move |&n| (c, n))).collect();
    let results: Vec<(Vec<Row>, Option<SolverHealth>)> =
        jobs.par_iter().map(|&(c, n)| run_job(spec, &cases[c], n)).collect();

    let mut out = RunOutput::default();
    for (c, case) in cases.iter().enumerate() {
        let per_n: Vec<&(Vec<Row>, Option<SolverHealth>)> =
            jobs.iter().zip(&results).filter(|((jc, _), _)| *jc == c).map(|(_, r)| r).collect();
        let slots = case.pairs.iter().map(|p| p.products.len()).sum::<usize>();
        for slot in 0..slots {
            out.rows.extend(per_n.iter().map(|(rows, _)| rows[slot].clone()));
        }
        out.health.extend(per_n.iter().filter_map(|(_, h)| h.clone()));
    }
    successive_differences(&mut out.rows);
    Ok(out)
}
