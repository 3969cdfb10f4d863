//! Polynomial volume integrals against a tensor Gauss-Legendre rule on the
//! unit square.

use curvquad::cellgeom::Cell;
use curvquad::kressquad::BoundaryGrid;
use curvquad::polyalg::poly_volume_integral;
use curvquad::{Poly, Vec2};
use proptest::prelude::*;

/// Nodes and weights on [0, 1] by Newton iteration on P_m.
fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (0.5 * (1.0 - x), 1.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn gauss_square(p: &Poly) -> f64 {
    let rule = gauss_legendre(8);
    rule.iter().flat_map(|&(x, wx)| rule.iter().map(move |&(y, wy)| wx * wy * p.eval(Vec2::new(x, y)))).sum()
}

fn arb_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    let n = ((max_deg + 1) * (max_deg + 2) / 2) as usize;
    proptest::collection::vec(-1.0f64..1.0, n).prop_map(|cs| Poly::from_indexed(Vec2::new(0.5, 0.5), cs.into_iter().enumerate()))
}

#[test]
fn gauss_rule_is_exact_on_monomials() {
    for a in 0..=15u32 {
        for b in 0..=15u32 {
            let exact = 1.0 / ((a + 1) * (b + 1)) as f64;
            let p = Poly::absolute_monomial(Vec2::new(0.5, 0.5), curvquad::polyalg::MultiIndex::new(a, b), 1.0);
            assert!((gauss_square(&p) - exact).abs() < 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_reduction_matches_gauss(p in arb_poly(10)) {
        let grid = BoundaryGrid::new(&Cell::square(), 64, 7).unwrap();
        let err = (poly_volume_integral(&p, &grid) - gauss_square(&p)).abs();
        prop_assert!(err <= 1e-12, "error {err:e}");
    }
}
