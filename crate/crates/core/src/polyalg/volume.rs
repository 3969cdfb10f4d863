use super::poly::Poly2;
use crate::cellgeom::EdgeParam;
use crate::error::Result;
use crate::kressquad::BoundaryGrid;
use crate::vec2::Vec2;

pub fn poly_eval(p: &Poly2<f64>, x: Vec2) -> f64 {
    p.eval(x)
}

pub fn poly_trace(p: &Poly2<f64>, edge: &EdgeParam, t: f64) -> f64 {
    p.eval(edge.point(t))
}

pub fn poly_normal_derivative_trace(p: &Poly2<f64>, edge: &EdgeParam, t: f64) -> Result<f64> {
    Ok(p.grad_at(edge.point(t)).dot(edge.unit_normal(t)?))
}

/// `∫_K p dx` via `∫_K (x-z)^α dx = 1/(2+|α|) ∮ (x-z)^α (x-z)·n ds`, where
/// `z` is the center of `p`.
pub fn poly_volume_integral(p: &Poly2<f64>, grid: &BoundaryGrid) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let z = p.center();
    let scaled = Poly2::from_terms(z, p.terms().map(|(alpha, &c)| (alpha, c / f64::from(2 + alpha.order()))));
    grid.integrate_fn(|nd| scaled.eval(nd.point) * (nd.point - z).dot(nd.normal))
}

impl Poly2<f64> {
    /// Values at every grid node.
    pub fn trace_on(&self, grid: &BoundaryGrid) -> Vec<f64> {
        grid.nodes().iter().map(|nd| self.eval(nd.point)).collect()
    }

    /// `∇p·n` at every grid node (one-sided normals at vertices).
    pub fn normal_derivative_on(&self, grid: &BoundaryGrid) -> Vec<f64> {
        if self.is_zero() {
            return vec![0.0; grid.len()];
        }
        grid.nodes().iter().map(|nd| self.grad_at(nd.point).dot(nd.normal)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellgeom::Cell;
    use crate::polyalg::MultiIndex;

    #[test]
    fn constant_on_square_and_circle() {
        let grid = BoundaryGrid::new(&Cell::square(), 32, 7).unwrap();
        let one = Poly2::constant(grid.cell().shift(), 1.0);
        assert!((poly_volume_integral(&one, &grid) - 1.0).abs() < 1e-9);
        assert_eq!(poly_eval(&one, Vec2::new(3.0, -2.0)), 1.0);

        let grid = BoundaryGrid::new(&Cell::circle(), 32, 7).unwrap();
        let one = Poly2::constant(Vec2::ZERO, 1.0);
        assert!((poly_volume_integral(&one, &grid) - std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn odd_monomial_vanishes_about_barycenter() {
        let grid = BoundaryGrid::new(&Cell::square(), 32, 7).unwrap();
        let p = Poly2::monomial(grid.cell().shift(), MultiIndex::new(1, 1), 1.0);
        assert!(poly_volume_integral(&p, &grid).abs() < 1e-12);
    }

    #[test]
    fn radial_derivative_on_circle() {
        let cell = Cell::circle();
        let p = Poly2::constant(Vec2::ZERO, 1.0).anti_laplacian();
        for edge in cell.edges() {
            for i in 0..=10 {
                let t = edge.a + (edge.b - edge.a) * f64::from(i) / 10.0;
                assert!((poly_normal_derivative_trace(&p, edge, t).unwrap() - 0.5).abs() < 1e-15);
                assert!((poly_trace(&p, edge, t) - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn normal_derivative_matches_finite_differences() {
        let cell = Cell::puzzle(0.22, 0.17).unwrap();
        let z = cell.shift();
        let p = Poly2::from_indexed(z, (0..21).map(|k| (k, ((k * 7 % 11) as f64 - 5.0) / 3.0)));
        let h = 1e-5;
        for edge in cell.edges() {
            for i in 1..8 {
                let t = edge.a + (edge.b - edge.a) * f64::from(i) / 8.0;
                let x = edge.point(t);
                let n = edge.unit_normal(t).unwrap();
                let fd = (p.eval(x + h * n) - p.eval(x + (-h) * n)) / (2.0 * h);
                assert!((fd - poly_normal_derivative_trace(&p, edge, t).unwrap()).abs() < 1e-8);
            }
        }
    }
}
