//! Curvilinear polygons: closed chains of smooth parameterized edges.
//!
//! Edge `k` of a cell with `E` edges is parameterized over the slot
//! `[2πk/E, 2π(k+1)/E]` of one global parameter, so the whole boundary is a
//! single `2π`-periodic curve traversed counter-clockwise.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kressquad::KressMap;
use crate::vec2::Vec2;

const MIN_SPEED: f64 = 1e-14;
const CLOSURE_TOL: f64 = 1e-10;

/// A smooth curve on the unit parameter interval `[0, 1]`.
pub trait Curve: Send + Sync + fmt::Debug {
    fn point(&self, s: f64) -> Vec2;
    fn deriv(&self, s: f64) -> Vec2;
    fn deriv2(&self, s: f64) -> Vec2;
}

#[derive(Clone, Debug)]
pub enum EdgeShape {
    Line { start: Vec2, end: Vec2 },
    /// Arc of a circle from angle `theta0` to `theta1`; counter-clockwise
    /// about its center when `theta1 > theta0`.
    CircularArc { center: Vec2, radius: f64, theta0: f64, theta1: f64 },
    Custom(Arc<dyn Curve>),
}

impl EdgeShape {
    /// Arc of the circle `(center, radius)` between two points on it.
    pub fn arc_between(center: Vec2, radius: f64, from: Vec2, to: Vec2, counter_clockwise: bool) -> Self {
        let theta0 = (from - center).y.atan2((from - center).x);
        let mut theta1 = (to - center).y.atan2((to - center).x);
        if counter_clockwise {
            while theta1 <= theta0 {
                theta1 += TAU;
            }
        } else {
            while theta1 >= theta0 {
                theta1 -= TAU;
            }
        }
        EdgeShape::CircularArc { center, radius, theta0, theta1 }
    }

    fn point(&self, s: f64) -> Vec2 {
        match self {
            EdgeShape::Line { start, end } => *start + s * (*end - *start),
            EdgeShape::CircularArc { center, radius, theta0, theta1 } => {
                *center + Vec2::from_polar(*radius, theta0 + s * (theta1 - theta0))
            }
            EdgeShape::Custom(c) => c.point(s),
        }
    }

    fn deriv(&self, s: f64) -> Vec2 {
        match self {
            EdgeShape::Line { start, end } => *end - *start,
            EdgeShape::CircularArc { radius, theta0, theta1, .. } => {
                let sweep = theta1 - theta0;
                let th = theta0 + s * sweep;
                Vec2::new(-th.sin(), th.cos()).scale(radius * sweep)
            }
            EdgeShape::Custom(c) => c.deriv(s),
        }
    }

    fn deriv2(&self, s: f64) -> Vec2 {
        match self {
            EdgeShape::Line { .. } => Vec2::ZERO,
            EdgeShape::CircularArc { radius, theta0, theta1, .. } => {
                let sweep = theta1 - theta0;
                let th = theta0 + s * sweep;
                Vec2::new(-th.cos(), -th.sin()).scale(radius * sweep * sweep)
            }
            EdgeShape::Custom(c) => c.deriv2(s),
        }
    }
}

/// An edge together with its slot `[a, b]` in the global boundary parameter.
#[derive(Clone, Debug)]
pub struct EdgeParam {
    pub shape: EdgeShape,
    pub a: f64,
    pub b: f64,
}

impl EdgeParam {
    fn local(&self, t: f64) -> f64 {
        (t - self.a) / (self.b - self.a)
    }

    pub fn point(&self, t: f64) -> Vec2 {
        self.shape.point(self.local(t))
    }

    /// `dx/dt`.
    pub fn deriv(&self, t: f64) -> Vec2 {
        self.shape.deriv(self.local(t)).scale(1.0 / (self.b - self.a))
    }

    /// `d²x/dt²`.
    pub fn deriv2(&self, t: f64) -> Vec2 {
        let len = self.b - self.a;
        self.shape.deriv2(self.local(t)).scale(1.0 / (len * len))
    }

    pub fn start(&self) -> Vec2 {
        self.shape.point(0.0)
    }

    pub fn end(&self) -> Vec2 {
        self.shape.point(1.0)
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.deriv(t).norm()
    }

    pub fn unit_tangent(&self, t: f64) -> Result<Vec2> {
        let d = self.deriv(t);
        let s = d.norm();
        if s < MIN_SPEED {
            return Err(Error::DegenerateEdge { edge: usize::MAX, t });
        }
        Ok(d.scale(1.0 / s))
    }

    /// Outward normal: the counter-clockwise tangent rotated by `-π/2`.
    pub fn unit_normal(&self, t: f64) -> Result<Vec2> {
        let tan = self.unit_tangent(t)?;
        Ok(Vec2::new(tan.y, -tan.x))
    }

    /// Signed curvature, positive where the edge turns left.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let d1 = self.deriv(t);
        let s = d1.norm();
        if s < MIN_SPEED {
            return Err(Error::DegenerateEdge { edge: usize::MAX, t });
        }
        Ok(d1.cross(self.deriv2(t)) / (s * s * s))
    }

    pub fn is_arc(&self) -> bool {
        matches!(self.shape, EdgeShape::CircularArc { .. })
    }

    pub fn is_line(&self) -> bool {
        matches!(self.shape, EdgeShape::Line { .. })
    }
}

/// A curvilinear polygon with a chosen shift point `z` for polynomial bases.
#[derive(Clone, Debug)]
pub struct Cell {
    name: String,
    edges: Vec<EdgeParam>,
    shift: Vec2,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// Edge `edge` does not end where the next one starts.
    NotClosed { edge: usize, gap: f64 },
    /// Boundary traversed clockwise (or enclosing no area).
    Orientation { signed_area: f64 },
    /// Parameterization speed vanishes somewhere on the edge.
    Irregular { edge: usize, t: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotClosed { edge, gap } => write!(f, "edge {edge} leaves a gap of {gap:e} to the next edge"),
            Violation::Orientation { signed_area } => write!(f, "signed area {signed_area} is not positive"),
            Violation::Irregular { edge, t } => write!(f, "edge {edge} is singular at t = {t}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellReport {
    pub violations: Vec<Violation>,
    pub signed_area: f64,
}

impl CellReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Cell {
    /// Assembles a cell from edge shapes listed counter-clockwise and places
    /// the shift point at the barycenter. Fails when the chain is not closed
    /// or an edge is singular.
    pub fn new(name: impl Into<String>, shapes: Vec<EdgeShape>) -> Result<Cell> {
        if shapes.is_empty() {
            return Err(Error::InvalidCell(vec!["cell has no edges".into()]));
        }
        let e = shapes.len() as f64;
        let edges: Vec<_> = shapes
            .into_iter()
            .enumerate()
            .map(|(k, shape)| EdgeParam { shape, a: TAU * k as f64 / e, b: TAU * (k + 1) as f64 / e })
            .collect();
        let mut cell = Cell { name: name.into(), edges, shift: Vec2::ZERO };
        let problems: Vec<String> = cell
            .structural_violations()
            .iter()
            .map(ToString::to_string)
            .collect();
        if !problems.is_empty() {
            return Err(Error::InvalidCell(problems));
        }
        cell.shift = cell.barycenter();
        Ok(cell)
    }

    pub fn with_shift(mut self, shift: Vec2) -> Cell {
        self.shift = shift;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edges(&self) -> &[EdgeParam] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &EdgeParam {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `z_i` is the start of edge `i`.
    pub fn vertices(&self) -> Vec<Vec2> {
        self.edges.iter().map(EdgeParam::start).collect()
    }

    pub fn shift(&self) -> Vec2 {
        self.shift
    }

    /// Interior angle at vertex `i` (start of edge `i`).
    pub fn interior_angle(&self, i: usize) -> f64 {
        let prev = &self.edges[(i + self.edges.len() - 1) % self.edges.len()];
        let next = &self.edges[i];
        let t_in = prev.deriv(prev.b);
        let t_out = next.deriv(next.a);
        let turn = t_in.cross(t_out).atan2(t_in.dot(t_out));
        PI - turn
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let e = self.edges.len();
        for (k, edge) in self.edges.iter().enumerate() {
            let gap = edge.end().dist(self.edges[(k + 1) % e].start());
            if gap > CLOSURE_TOL {
                out.push(Violation::NotClosed { edge: k, gap });
            }
            for i in 0..=32 {
                let t = edge.a + (edge.b - edge.a) * f64::from(i) / 32.0;
                if edge.speed(t) < MIN_SPEED {
                    out.push(Violation::Irregular { edge: k, t });
                    break;
                }
            }
        }
        out
    }

    /// Boundary integral `Σ_e ∫ f(x, n) ds` on a Kress-graded rule.
    fn boundary_integral(&self, f: impl Fn(Vec2, Vec2) -> f64) -> f64 {
        const M: usize = 128;
        let mut total = 0.0;
        for edge in &self.edges {
            let map = KressMap::new(edge.a, edge.b, 7).expect("valid grading");
            let h = (edge.b - edge.a) / M as f64;
            for k in 1..M {
                let tau = edge.a + k as f64 * h;
                let t = map.lambda(tau);
                let d = edge.deriv(t);
                let s = d.norm();
                if s < MIN_SPEED {
                    continue;
                }
                let normal = Vec2::new(d.y, -d.x).scale(1.0 / s);
                total += h * map.lambda_prime(tau) * s * f(edge.point(t), normal);
            }
        }
        total
    }

    /// Signed area `½ ∮ x·n ds`.
    pub fn signed_area(&self) -> f64 {
        0.5 * self.boundary_integral(|x, n| x.dot(n))
    }

    /// Centroid from the boundary moments `∫_K x_i dx = ½ ∮ x_i² n_i ds`.
    pub fn barycenter(&self) -> Vec2 {
        let area = self.signed_area();
        let mx = 0.5 * self.boundary_integral(|x, n| x.x * x.x * n.x);
        let my = 0.5 * self.boundary_integral(|x, n| x.y * x.y * n.y);
        Vec2::new(mx / area, my / area)
    }

    /// Checks closure, counter-clockwise orientation and edge regularity.
    pub fn validate(&self) -> CellReport {
        let mut violations = self.structural_violations();
        let signed_area = self.signed_area();
        if !(signed_area > 0.0) {
            violations.push(Violation::Orientation { signed_area });
        }
        CellReport { violations, signed_area }
    }

    /// Unit square `(0,1)²`.
    pub fn square() -> Cell {
        let z = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)];
        let shapes = (0..4).map(|i| EdgeShape::Line { start: z[i], end: z[(i + 1) % 4] }).collect();
        Cell::new("square", shapes).expect("square is valid")
    }

    /// Unit disk, split into two half-circles with vertices at `(±1, 0)`.
    pub fn circle() -> Cell {
        let shapes = vec![
            EdgeShape::CircularArc { center: Vec2::ZERO, radius: 1.0, theta0: 0.0, theta1: PI },
            EdgeShape::CircularArc { center: Vec2::ZERO, radius: 1.0, theta0: PI, theta1: TAU },
        ];
        Cell::new("circle", shapes).expect("circle is valid")
    }

    /// Sector `{0 < r < 1, 0 < θ < π/μ}` of the unit disk, `1/2 < μ < 1`.
    pub fn pacman(mu: f64) -> Result<Cell> {
        if !(mu > 0.5 && mu < 1.0) {
            return Err(Error::InvalidParameter(format!("pacman exponent {mu} outside (1/2, 1)")));
        }
        let opening = PI / mu;
        let tip = Vec2::from_polar(1.0, opening);
        let shapes = vec![
            EdgeShape::Line { start: Vec2::ZERO, end: Vec2::new(1.0, 0.0) },
            EdgeShape::CircularArc { center: Vec2::ZERO, radius: 1.0, theta0: 0.0, theta1: opening },
            EdgeShape::Line { start: tip, end: Vec2::ZERO },
        ];
        Cell::new("pacman", shapes)
    }

    /// Jigsaw piece over the unit square: blanks (circular indentations) on
    /// the bottom and top sides, tabs on the right and left sides. Circles
    /// have radius `r` and centers at distance `b < r` from the side lines.
    pub fn puzzle(r: f64, b: f64) -> Result<Cell> {
        if !(b > 0.0 && b < r) {
            return Err(Error::InvalidParameter(format!("puzzle needs 0 < b < r, got r = {r}, b = {b}")));
        }
        let d = (r * r - b * b).sqrt();
        if d >= 0.5 {
            return Err(Error::InvalidParameter(format!("puzzle circles of radius {r} do not fit on a unit side")));
        }
        let z = [
            Vec2::new(0.0, 0.0),
            Vec2::new(0.5 - d, 0.0),
            Vec2::new(0.5 + d, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 0.5 - d),
            Vec2::new(1.0, 0.5 + d),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.5 + d, 1.0),
            Vec2::new(0.5 - d, 1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, 0.5 + d),
            Vec2::new(0.0, 0.5 - d),
        ];
        let line = |i: usize| EdgeShape::Line { start: z[i], end: z[(i + 1) % 12] };
        let shapes = vec![
            line(0),
            EdgeShape::arc_between(Vec2::new(0.5, b), r, z[1], z[2], false),
            line(2),
            line(3),
            EdgeShape::arc_between(Vec2::new(1.0 + b, 0.5), r, z[4], z[5], true),
            line(5),
            line(6),
            EdgeShape::arc_between(Vec2::new(0.5, 1.0 - b), r, z[7], z[8], false),
            line(8),
            line(9),
            EdgeShape::arc_between(Vec2::new(-b, 0.5), r, z[10], z[11], true),
            line(11),
        ];
        Cell::new("puzzle", shapes)
    }

    /// Parses the plain-text cell format: one edge per line, either
    /// `line x0 y0 x1 y1` or `arc cx cy r theta0 theta1`, counter-clockwise.
    /// Blank lines and `#` comments are ignored.
    pub fn parse_cell_file(name: &str, text: &str) -> Result<Cell> {
        let mut shapes = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let kind = fields.next().unwrap_or_default();
            let nums: Vec<f64> = fields
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::CellFile { line: lineno + 1, message: e.to_string() })?;
            let shape = match (kind, nums.as_slice()) {
                ("line", &[x0, y0, x1, y1]) => EdgeShape::Line { start: Vec2::new(x0, y0), end: Vec2::new(x1, y1) },
                ("arc", &[cx, cy, r, t0, t1]) => {
                    if !(r > 0.0) || t0 == t1 {
                        return Err(Error::CellFile { line: lineno + 1, message: "degenerate arc".into() });
                    }
                    EdgeShape::CircularArc { center: Vec2::new(cx, cy), radius: r, theta0: t0, theta1: t1 }
                }
                _ => {
                    return Err(Error::CellFile {
                        line: lineno + 1,
                        message: format!("expected `line x0 y0 x1 y1` or `arc cx cy r theta0 theta1`, got `{line}`"),
                    })
                }
            };
            shapes.push(shape);
        }
        Cell::new(name, shapes)
    }

    pub fn from_cell_file(path: &Path) -> Result<Cell> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
        Self::parse_cell_file(name, &text)
    }

    /// Built-in cells by name: `square`, `circle`, `pacman`, `puzzle`.
    pub fn builtin(name: &str) -> Result<Cell> {
        match name {
            "square" => Ok(Cell::square()),
            "circle" => Ok(Cell::circle()),
            "pacman" => Cell::pacman(4.0 / 7.0),
            "puzzle" => Cell::puzzle(0.22, 0.17),
            other => Err(Error::InvalidParameter(format!("unknown cell `{other}`"))),
        }
    }
}
