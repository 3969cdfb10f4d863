#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use curvquad::polyalg::MultiIndex;
use proptest::prelude::*;
use quadbench::experiments::BUBBLE_ROWS;
use quadbench::references::*;

/// Composite 3-point Gauss–Legendre rule on `[a, b]`.
fn gauss(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let x = (0.6f64).sqrt();
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let m = a + (i as f64 + 0.5) * h;
            let r = 0.5 * h;
            r * (5.0 * f(m - r * x) + 8.0 * f(m) + 5.0 * f(m + r * x)) / 9.0
        })
        .sum()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #[test]
    fn sine_moments_match_quadrature(a in 0u32..9, l in 1u32..25) {
        let exact = gauss(|t| t.powi(a as i32) * (f64::from(l) * PI * t).sin(), 0.0, 1.0, 4000);
        prop_assert!((ref_s(a, l).unwrap() - exact).abs() < 1e-13, "a = {a}, l = {l}");
    }
}

#[test]
fn sine_moment_by_parts() {
    // S_{a,ℓ} = (-1)^{ℓ+1}/(ℓπ) + a/(ℓπ) C_{a-1,ℓ}, C_{b,ℓ} = -b/(ℓπ) S_{b-1,ℓ} for b ≥ 1
    for l in 1..6u32 {
        let x = f64::from(l) * PI;
        let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
        for a in 2..8u32 {
            let c = -f64::from(a - 1) / x * ref_s(a - 2, l).unwrap();
            let s = sign / x + f64::from(a) / x * c;
            assert!((ref_s(a, l).unwrap() - s).abs() < 1e-15, "a = {a}, l = {l}");
        }
    }
}

const BUBBLE_EXPECTED: [(f64, f64); 7] = [
    (1.702510524718458e-03, 3.514425373878843e-02),
    (8.512552623592291e-04, 1.757212686939421e-02),
    (2.216128146808729e-04, 4.876460403509895e-03),
    (8.101386165180633e-05, 1.905102279276017e-03),
    (9.507439861840766e-06, 3.269201405690909e-04),
    (4.942357655448965e-06, 1.881216015506745e-04),
    (4.456767076898193e-06, 1.792263895426231e-04),
];

#[test]
fn bubble_series_reproduce_sixteen_digit_values() {
    for (&(a, b), &(l2, h1)) in BUBBLE_ROWS.iter().zip(&BUBBLE_EXPECTED) {
        let r = bubble_pair(MultiIndex::new(a.0, a.1), MultiIndex::new(b.0, b.1));
        assert!(rel(r.l2.value, l2) < 1e-13, "{a:?} {b:?} L2 rel {:e}", rel(r.l2.value, l2));
        assert!(rel(r.h1.value, h1) < 1e-13, "{a:?} {b:?} H1 rel {:e}", rel(r.h1.value, h1));
        for v in [r.l2, r.h1] {
            let Provenance::Series { tail_bound, .. } = v.provenance else { panic!("series provenance") };
            assert!(tail_bound < 1e-13 * v.value.abs());
        }
    }
}

#[test]
fn stiffness_series_agree_with_double_series() {
    // the double series at K = 400 has a tail of order 1e-9 relative
    for &(a, b) in &BUBBLE_ROWS[..4] {
        let (ma, mb) = (MultiIndex::new(a.0, a.1), MultiIndex::new(b.0, b.1));
        let single = bubble_h1(ma, mb).value;
        let double = bubble_h1_double_series(ma, mb, 400);
        assert!(rel(double, single) < 1e-7, "{a:?} {b:?}: {:e}", rel(double, single));
    }
}

#[test]
fn stiffness_is_symmetric_in_the_pair() {
    let (a, b) = (MultiIndex::new(2, 1), MultiIndex::new(0, 2));
    assert!(rel(bubble_h1(a, b).value, bubble_h1(b, a).value) < 1e-14);
}

#[test]
fn square_basis_series_reproduce_sixteen_digit_values() {
    let cases = [
        (SquarePair::V0W1, 6.069682826514464e-03, -1.0 / 12.0),
        (SquarePair::V1W1, 1.802485697075799e-02, 1.0 / 12.0),
        (SquarePair::WjWj, 5.195037581961447e-03, 1.054327612163653e-01),
        (SquarePair::BubbleBubble, 1.702510524718458e-03, 3.514425373878843e-02),
        (SquarePair::VjBubble, 8.786063434697107e-3, 0.0),
        (SquarePair::WjBubble, 1.769711697503764e-03, 0.0),
        (SquarePair::VjVj, 1.0 / 9.0, 2.0 / 3.0),
        (SquarePair::VjVjNext, 1.0 / 18.0, -1.0 / 6.0),
        (SquarePair::VjVjOpposite, 1.0 / 36.0, -1.0 / 3.0),
    ];
    for (pair, l2, h1) in cases {
        let r = square_pair(pair);
        assert!(rel(r.l2.value, l2) < 1e-13, "{pair:?} L2 rel {:e}", rel(r.l2.value, l2));
        if h1 == 0.0 {
            assert_eq!(r.h1.value, 0.0);
        } else {
            assert!(rel(r.h1.value, h1) < 1e-13, "{pair:?} H1 rel {:e}", rel(r.h1.value, h1));
        }
    }
}

#[test]
fn bilinear_vertex_products() {
    // tensor products of the 1D hat functions 1-x and x
    let m = [[1.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 1.0 / 3.0]];
    let k = [[1.0, -1.0], [-1.0, 1.0]];
    let idx = [(0, 0), (1, 0), (1, 1), (0, 1)];
    let l2 = |i: usize, j: usize| m[idx[i].0][idx[j].0] * m[idx[i].1][idx[j].1];
    let h1 = |i: usize, j: usize| k[idx[i].0][idx[j].0] * m[idx[i].1][idx[j].1] + m[idx[i].0][idx[j].0] * k[idx[i].1][idx[j].1];
    for (pair, j) in [(SquarePair::VjVj, 0), (SquarePair::VjVjNext, 1), (SquarePair::VjVjOpposite, 2), (SquarePair::VjVjPrev, 3)] {
        let r = square_pair(pair);
        assert!((r.l2.value - l2(0, j)).abs() < 1e-16);
        assert!((r.h1.value - h1(0, j)).abs() < 1e-16);
    }
}

#[test]
fn pacman_closed_forms() {
    let (mu, nu) = (4.0 / 7.0, 2.0 / 7.0);
    let r = ref_pacman(mu, mu, PacmanPair::V1V1).unwrap();
    assert!((r.l2.value - 49.0 * PI / 176.0).abs() < 1e-15);
    assert!((r.h1.value - PI / 2.0).abs() < 1e-15);
    let r = ref_pacman(mu, nu, PacmanPair::V1V2).unwrap();
    assert!((r.l2.value - 49.0 / 60.0).abs() < 1e-15);
    assert!((r.h1.value - 2.0 / 3.0).abs() < 1e-15);
    let r = ref_pacman(mu, nu, PacmanPair::V1V3).unwrap();
    assert!((r.l2.value - 16807.0 * 2f64.sqrt() / 264960.0).abs() < 1e-15);
    assert_eq!(r.h1.value, 0.0);
    let r = ref_pacman(mu, nu, PacmanPair::V2V3).unwrap();
    assert!((r.l2.value - 2401.0 * 2f64.sqrt() / 31680.0).abs() < 1e-15);
    assert_eq!(r.h1.value, 0.0);
}

#[test]
fn pacman_bubble_moments_match_polar_quadrature() {
    // ∫∫ r^a sin(aθ) (1 - r²) r² sin θ sin(θ - π/μ) r dr dθ; the radial
    // factor is 1/(a+4) - 1/(a+6)
    let mu = 4.0 / 7.0;
    for (a, pair) in [(mu, PacmanPair::V1V3), (2.0 / 7.0, PacmanPair::V2V3)] {
        let radial = 1.0 / (a + 4.0) - 1.0 / (a + 6.0);
        let angular = gauss(|t| (a * t).sin() * t.sin() * (t - PI / mu).sin(), 0.0, PI / mu, 2000);
        let r = ref_pacman(mu, 2.0 / 7.0, pair).unwrap();
        assert!((r.l2.value - radial * angular).abs() < 1e-14, "{pair:?}");
    }
}

#[test]
fn pacman_domain_is_checked() {
    assert!(ref_pacman(4.0 / 7.0, 5.0 / 7.0, PacmanPair::V1V2).is_err());
    assert!(ref_pacman(1.5, 0.6, PacmanPair::V1V1).is_err());
}
