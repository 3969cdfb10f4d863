use super::function::{TraceSpec, VmFunction};
use crate::cellgeom::{Cell, EdgeParam};
use crate::error::{Error, Result};
use crate::polyalg::MultiIndex;
use crate::vec2::Vec2;
use crate::Poly;

fn affine_from(center: Vec2, f: impl Fn(Vec2) -> f64) -> Poly {
    let v0 = f(center);
    let gx = f(center + Vec2::new(1.0, 0.0)) - v0;
    let gy = f(center + Vec2::new(0.0, 1.0)) - v0;
    Poly::affine(center, v0, Vec2::new(gx, gy))
}

/// Which side of an arc's chord carries the fictitious apex, relative to
/// the cell's shift point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ApexSide {
    /// Away from the shift point; apex functions are positive on tabs and
    /// negative on blanks.
    #[default]
    Outward,
    /// Toward the shift point; every apex function changes sign and the
    /// endpoint functions pick up the apex function.
    Inward,
}

/// Fictitious apex of the equilateral triangle over the chord of an arc.
pub fn fictitious_point(cell: &Cell, edge: &EdgeParam, side: ApexSide) -> Vec2 {
    let (a, b) = (edge.start(), edge.end());
    let mid = 0.5 * (a + b);
    let chord = b - a;
    let mut u = chord.perp().scale(1.0 / chord.norm());
    if (u.dot(mid - cell.shift()) < 0.0) == (side == ApexSide::Outward) {
        u = -u;
    }
    mid + (0.5 * 3f64.sqrt() * chord.norm()) * u
}

/// Barycentric coordinates `(λ_start, λ_end, λ_apex)` of the triangle
/// `(start, end, apex)`, as affine polynomials.
fn barycentric(center: Vec2, a: Vec2, b: Vec2, c: Vec2) -> [Poly; 3] {
    let area = (b - a).cross(c - a);
    let lam = |p: Vec2, q: Vec2| affine_from(center, move |x: Vec2| (p - x).cross(q - x) / area);
    [lam(b, c), lam(c, a), lam(a, b)]
}

/// Linear traces on edge `e`: the two endpoint functions, plus the apex
/// function on arcs.
fn edge_linears(cell: &Cell, e: usize, side: ApexSide) -> (Poly, Poly, Option<Poly>) {
    let z = cell.shift();
    let edge = cell.edge(e);
    let (a, b) = (edge.start(), edge.end());
    if edge.is_arc() {
        let [la, lb, lc] = barycentric(z, a, b, fictitious_point(cell, edge, side));
        (la, lb, Some(lc))
    } else {
        let d = b - a;
        let len2 = d.norm_sq();
        (affine_from(z, |x| (b - x).dot(d) / len2), affine_from(z, |x| (x - a).dot(d) / len2), None)
    }
}

/// Harmonic function with `v_i(z_j) = δ_ij` and a linear trace on each edge.
pub fn make_vertex_fn(cell: &Cell, i: usize) -> Result<VmFunction> {
    make_vertex_fn_with(cell, i, ApexSide::Outward)
}

pub fn make_vertex_fn_with(cell: &Cell, i: usize, side: ApexSide) -> Result<VmFunction> {
    let ne = cell.num_edges();
    if i >= ne {
        return Err(Error::InvalidParameter(format!("vertex {i} out of range for {ne} vertices")));
    }
    let z = cell.shift();
    let traces = (0..ne)
        .map(|e| {
            let (start, end, _) = edge_linears(cell, e, side);
            if e == i {
                start
            } else if (e + 1) % ne == i {
                end
            } else {
                Poly::zero(z)
            }
        })
        .collect();
    Ok(VmFunction::harmonic(format!("v{i}"), TraceSpec::PerEdge(traces)))
}

/// Harmonic function whose trace is the apex coordinate on one arc and
/// zero elsewhere.
pub fn make_arc_linear_fn(cell: &Cell, edge: usize) -> Result<VmFunction> {
    make_arc_linear_fn_with(cell, edge, ApexSide::Outward)
}

pub fn make_arc_linear_fn_with(cell: &Cell, edge: usize, side: ApexSide) -> Result<VmFunction> {
    let ne = cell.num_edges();
    if edge >= ne {
        return Err(Error::InvalidParameter(format!("edge {edge} out of range for {ne} edges")));
    }
    let (_, _, apex) = edge_linears(cell, edge, side);
    let apex = apex.ok_or(Error::NotAnArc(edge))?;
    let z = cell.shift();
    let traces = (0..ne).map(|e| if e == edge { apex.clone() } else { Poly::zero(z) }).collect();
    Ok(VmFunction::harmonic(format!("u[e{edge}]"), TraceSpec::PerEdge(traces)))
}

/// Harmonic function with trace `v_i v_{i+1}`.
pub fn make_edge_fn_product(cell: &Cell, i: usize) -> Result<VmFunction> {
    make_edge_fn_product_with(cell, i, ApexSide::Outward)
}

pub fn make_edge_fn_product_with(cell: &Cell, i: usize, side: ApexSide) -> Result<VmFunction> {
    let ne = cell.num_edges();
    let a = make_vertex_fn_with(cell, i, side)?;
    let b = make_vertex_fn_with(cell, (i + 1) % ne, side)?;
    let (TraceSpec::PerEdge(ta), TraceSpec::PerEdge(tb)) = (a.trace(), b.trace()) else {
        unreachable!("vertex functions have per-edge traces")
    };
    let traces = ta.iter().zip(tb).map(|(p, q)| p.mul(q)).collect::<Result<Vec<_>>>()?;
    Ok(VmFunction::harmonic(format!("w{i}"), TraceSpec::PerEdge(traces)))
}

/// Zero trace and `Δv = p`.
pub fn make_bubble(name: impl Into<String>, p: Poly) -> VmFunction {
    VmFunction::bubble(name, p)
}

/// Bubble with `-Δv = x^α` in absolute coordinates.
pub fn make_monomial_bubble(cell: &Cell, alpha: MultiIndex) -> VmFunction {
    let p = Poly::absolute_monomial(cell.shift(), alpha, -1.0);
    VmFunction::bubble(format!("bubble{:?}", (alpha.a1, alpha.a2)), p)
}

/// All vertex functions; they sum to one on straight edges.
pub fn vertex_basis(cell: &Cell, side: ApexSide) -> Result<Vec<VmFunction>> {
    (0..cell.num_edges()).map(|i| make_vertex_fn_with(cell, i, side)).collect()
}

/// Edge functions of all arcs, in edge order.
pub fn arc_basis(cell: &Cell, side: ApexSide) -> Vec<VmFunction> {
    (0..cell.num_edges()).filter_map(|e| make_arc_linear_fn_with(cell, e, side).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kressquad::BoundaryGrid;

    #[test]
    fn square_vertex_traces() {
        let cell = Cell::square();
        let grid = BoundaryGrid::new(&cell, 8, 7).unwrap();
        let v0 = make_vertex_fn(&cell, 0).unwrap();
        for nd in grid.nodes() {
            let x = nd.point;
            let exact = (1.0 - x.x) * (1.0 - x.y);
            assert!((v0.trace().eval(nd.edge, x) - exact).abs() < 1e-14);
        }
        let basis = vertex_basis(&cell, ApexSide::Outward).unwrap();
        for nd in grid.nodes() {
            let sum: f64 = basis.iter().map(|v| v.trace().eval(nd.edge, nd.point)).sum();
            assert!((sum - 1.0).abs() < 1e-14);
        }
        let w1 = make_edge_fn_product(&cell, 1).unwrap();
        for nd in grid.nodes() {
            let x = nd.point;
            let exact = if nd.edge == 1 { x.y * (1.0 - x.y) } else { 0.0 };
            assert!((w1.trace().eval(nd.edge, x) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn vertex_functions_interpolate() {
        let cell = Cell::puzzle(0.22, 0.17).unwrap();
        let verts = cell.vertices();
        for i in 0..cell.num_edges() {
            let v = make_vertex_fn(&cell, i).unwrap();
            for (e, &z) in verts.iter().enumerate() {
                let expected = if e == i { 1.0 } else { 0.0 };
                // vertex e is the start of edge e and the end of edge e-1
                assert!((v.trace().eval(e, z) - expected).abs() < 1e-13);
                let prev = (e + cell.num_edges() - 1) % cell.num_edges();
                assert!((v.trace().eval(prev, z) - expected).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn puzzle_partition_of_unity_on_straight_edges() {
        let cell = Cell::puzzle(0.22, 0.17).unwrap();
        let grid = BoundaryGrid::new(&cell, 8, 7).unwrap();
        let basis = vertex_basis(&cell, ApexSide::Outward).unwrap();
        for nd in grid.nodes().iter().filter(|nd| cell.edge(nd.edge).is_line()) {
            let sum: f64 = basis.iter().map(|v| v.trace().eval(nd.edge, nd.point)).sum();
            assert!((sum - 1.0).abs() < 1e-13);
        }
        // with the apex function, barycentric coordinates also sum to one on arcs
        let arcs = arc_basis(&cell, ApexSide::Outward);
        assert_eq!(arcs.len(), 4);
        for nd in grid.nodes() {
            let sum: f64 = basis.iter().chain(&arcs).map(|v| v.trace().eval(nd.edge, nd.point)).sum();
            assert!((sum - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn arc_function_signs() {
        let cell = Cell::puzzle(0.22, 0.17).unwrap();
        let grid = BoundaryGrid::new(&cell, 8, 7).unwrap();
        for (e, sign) in [(1, -1.0), (4, 1.0), (7, -1.0), (10, 1.0)] {
            let u = make_arc_linear_fn(&cell, e).unwrap();
            for nd in grid.nodes().iter().filter(|nd| nd.edge == e && nd.weight > 0.0) {
                assert!(sign * u.trace().eval(e, nd.point) > 0.0);
            }
        }
        assert!(matches!(make_arc_linear_fn(&cell, 0), Err(Error::NotAnArc(0))));
    }

    #[test]
    fn inward_apex_relation() {
        // moving the apex across the chord negates the apex coordinate and
        // adds it to both endpoint coordinates
        let cell = Cell::puzzle(0.22, 0.17).unwrap();
        let grid = BoundaryGrid::new(&cell, 8, 7).unwrap();
        let (u_out, u_in) = (make_arc_linear_fn(&cell, 4).unwrap(), make_arc_linear_fn_with(&cell, 4, ApexSide::Inward).unwrap());
        let (v_out, v_in) = (make_vertex_fn(&cell, 4).unwrap(), make_vertex_fn_with(&cell, 4, ApexSide::Inward).unwrap());
        for nd in grid.nodes() {
            let (e, x) = (nd.edge, nd.point);
            assert!((u_in.trace().eval(e, x) + u_out.trace().eval(e, x)).abs() < 1e-14);
            assert!((v_in.trace().eval(e, x) - v_out.trace().eval(e, x) - u_out.trace().eval(e, x)).abs() < 1e-13);
        }
    }
}
