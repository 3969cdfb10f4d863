use curvquad::cellgeom::Cell;
use curvquad::nystrom::SolverOptions;
use curvquad::polyalg::{poly_volume_integral, MultiIndex};
use curvquad::vmspace::*;
use curvquad::{Poly, Vec2};

fn quad(cell: &Cell, n: usize) -> CellQuadrature {
    CellQuadrature::new(cell, n, 7, SolverOptions::default()).unwrap()
}

fn square_basis(cell: &Cell) -> Vec<VmFunction> {
    let mut basis = vertex_basis(cell, ApexSide::Outward).unwrap();
    basis.push(make_edge_fn_product(cell, 0).unwrap());
    basis.push(make_edge_fn_product(cell, 1).unwrap());
    basis.push(make_monomial_bubble(cell, MultiIndex::new(0, 0)));
    basis.push(make_monomial_bubble(cell, MultiIndex::new(1, 0)));
    basis
}

#[test]
fn harmonic_against_bubble_is_a_literal_zero() {
    let cell = Cell::puzzle(0.22, 0.17).unwrap();
    let q = quad(&cell, 8);
    let v = make_vertex_fn(&cell, 3).unwrap();
    let b = make_monomial_bubble(&cell, MultiIndex::new(2, 1));
    assert_eq!(q.h1_product(&v, &b).unwrap().to_bits(), 0.0f64.to_bits());
    assert_eq!(q.h1_product(&b, &v).unwrap().to_bits(), 0.0f64.to_bits());
    assert!(q.reports().is_empty());
}

#[test]
fn gram_matrices_are_symmetric() {
    for (cell, n) in [(Cell::square(), 32), (Cell::puzzle(0.22, 0.17).unwrap(), 64)] {
        let mut basis = square_basis(&cell);
        basis.extend(arc_basis(&cell, ApexSide::Outward));
        let q = quad(&cell, n);
        for kind in [ProductKind::Mass, ProductKind::Stiffness] {
            let m = q.assemble_local_matrix(&basis, kind).unwrap();
            assert!(m.raw_asymmetry <= 1e-10, "{} {kind:?}: {:e}", cell.name(), m.raw_asymmetry);
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    assert_eq!(m.get(i, j), m.get(j, i));
                }
            }
        }
    }
}

fn cholesky_ok(m: &LocalMatrix) -> bool {
    let n = m.dim();
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * n + k] * l[j * n + k]).sum();
            if i == j {
                let d = m.get(i, i) - s;
                if d <= 0.0 {
                    return false;
                }
                l[i * n + i] = d.sqrt();
            } else {
                l[i * n + j] = (m.get(i, j) - s) / l[j * n + j];
            }
        }
    }
    true
}

#[test]
fn mass_matrix_is_positive_definite() {
    let cell = Cell::square();
    let m = quad(&cell, 16).assemble_local_matrix(&square_basis(&cell), ProductKind::Mass).unwrap();
    assert!(cholesky_ok(&m));
}

#[test]
fn stiffness_annihilates_constants() {
    // the vertex functions sum to one on the square
    let cell = Cell::square();
    let basis = vertex_basis(&cell, ApexSide::Outward).unwrap();
    let k = quad(&cell, 32).assemble_local_matrix(&basis, ProductKind::Stiffness).unwrap();
    for i in 0..k.dim() {
        let row: f64 = (0..k.dim()).map(|j| k.get(i, j)).sum();
        assert!(row.abs() < 1e-9, "{row:e}");
    }
}

#[test]
fn products_are_bilinear() {
    let cell = Cell::puzzle(0.22, 0.17).unwrap();
    let q = quad(&cell, 16);
    let v = make_vertex_fn(&cell, 1).unwrap();
    let u = make_arc_linear_fn(&cell, 4).unwrap();
    let b = make_monomial_bubble(&cell, MultiIndex::new(1, 1));
    let w = make_edge_fn_product(&cell, 6).unwrap();
    let combo = VmFunction::linear_combination("c", &[(0.7, &v), (-1.3, &u), (2.0, &b)], cell.shift());
    for kind in [ProductKind::Mass, ProductKind::Stiffness] {
        let lhs = q.product(kind, &combo, &w).unwrap();
        let rhs = 0.7 * q.product(kind, &v, &w).unwrap() - 1.3 * q.product(kind, &u, &w).unwrap()
            + 2.0 * q.product(kind, &b, &w).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()), "{kind:?}: {lhs} vs {rhs}");
    }
}

#[test]
fn polynomial_functions_agree_with_volume_integrals() {
    let cell = Cell::square();
    let q = quad(&cell, 32);
    let z = cell.shift();
    let r = Poly::from_terms(Vec2::ZERO, [(MultiIndex::new(2, 1), 1.0), (MultiIndex::new(0, 1), -0.5), (MultiIndex::new(0, 0), 0.25)]).recentered(z);
    let s = Poly::from_terms(Vec2::ZERO, [(MultiIndex::new(1, 0), 2.0), (MultiIndex::new(0, 3), 1.0)]).recentered(z);
    let (fr, fs) = (VmFunction::polynomial("r", r.clone()), VmFunction::polynomial("s", s.clone()));
    let grid = q.grid();
    let mass = poly_volume_integral(&r.mul(&s).unwrap(), grid);
    assert!((q.l2_product(&fr, &fs).unwrap() - mass).abs() < 1e-12);

    // the same functions described only by Laplacian and trace
    let gr = VmFunction::new("r'", r.laplacian(), TraceSpec::Polynomial(r.clone()));
    let gs = VmFunction::new("s'", s.laplacian(), TraceSpec::Polynomial(s.clone()));
    assert!((q.l2_product(&gr, &gs).unwrap() - mass).abs() < 1e-10);
    assert!((q.l2_product(&gr, &fs).unwrap() - mass).abs() < 1e-10);

    let (rx, ry) = r.grad();
    let (sx, sy) = s.grad();
    let stiff = poly_volume_integral(&rx.mul(&sx).unwrap().add(&ry.mul(&sy).unwrap()).unwrap(), grid);
    assert!((q.h1_product(&gr, &gs).unwrap() - stiff).abs() < 1e-9);
}

#[test]
fn area_from_constant_function() {
    for (cell, exact) in [(Cell::square(), 1.0), (Cell::circle(), std::f64::consts::PI)] {
        let one = VmFunction::harmonic("1", TraceSpec::Polynomial(Poly::constant(cell.shift(), 1.0)));
        let q = quad(&cell, 64);
        let area = q.l2_product(&one, &one).unwrap();
        assert!((area - exact).abs() < 1e-12, "{}: {:e}", cell.name(), area - exact);
    }
}

#[test]
fn square_vertex_products() {
    let cell = Cell::square();
    let q = quad(&cell, 32);
    let v: Vec<_> = (0..4).map(|i| make_vertex_fn(&cell, i).unwrap()).collect();
    let cases = [(0, 0, 1.0 / 9.0, 2.0 / 3.0), (0, 1, 1.0 / 18.0, -1.0 / 6.0), (0, 2, 1.0 / 36.0, -1.0 / 3.0)];
    for (i, j, l2, h1) in cases {
        assert!((q.l2_product(&v[i], &v[j]).unwrap() - l2).abs() < 1e-10);
        assert!((q.h1_product(&v[i], &v[j]).unwrap() - h1).abs() < 1e-9);
    }
}
