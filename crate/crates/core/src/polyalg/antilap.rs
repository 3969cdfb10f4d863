use super::multiindex::MultiIndex;
use super::poly::Poly2;
use super::table::ROWS;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Highest `|α|` covered by the precomputed table.
pub const TABLE_MAX_ORDER: u32 = 10;

/// One tabulated `P_α`: non-zero coefficients as integer numerators over a
/// common denominator.
#[derive(Clone, Copy, Debug)]
pub struct AntiLaplacianRow {
    pub alpha: MultiIndex,
    pub positions: &'static [usize],
    pub numerators: &'static [i64],
    pub denominator: i64,
}

impl AntiLaplacianRow {
    pub fn to_poly<T: Scalar>(&self, center: Vec2) -> Poly2<T> {
        Poly2::from_indexed(
            center,
            self.positions
                .iter()
                .zip(self.numerators)
                .map(|(&k, &num)| (k, T::from_ratio(num, self.denominator))),
        )
    }

    /// `Σ (-1)^i c_i` over the stored coefficients, as a numerator over
    /// [`Self::denominator`].
    pub fn alternating_numerator_sum(&self) -> i64 {
        self.numerators.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { -c }).sum()
    }
}

/// Read-only view of the precomputed anti-Laplacians, indexed by the linear
/// multiindex position `k`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AntiLaplacianTable;

impl AntiLaplacianTable {
    pub fn len(&self) -> usize {
        ROWS.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn row(&self, k: usize) -> Option<AntiLaplacianRow> {
        ROWS.get(k).map(|&(positions, numerators, denominator)| AntiLaplacianRow {
            alpha: MultiIndex::from_index(k),
            positions,
            numerators,
            denominator,
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = AntiLaplacianRow> + '_ {
        (0..self.len()).filter_map(|k| self.row(k))
    }
}

fn factorial<T: Scalar>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_count(i))
}

/// `P_α` from the closed formula
///
/// `P_α = |x-z|² / (4(|α|+1)!) Σ_k (-1)^k (|α|-k)!/(k+1)! (|x-z|²/4)^k Δ^k (x-z)^α`.
pub fn anti_laplacian_formula<T: Scalar>(alpha: MultiIndex, center: Vec2) -> Poly2<T> {
    let order = alpha.order();
    let r2 = Poly2::from_terms(center, [(MultiIndex::new(2, 0), T::one()), (MultiIndex::new(0, 2), T::one())]);
    let quarter = T::from_ratio(1, 4);
    let mut lap_k = Poly2::monomial(center, alpha, T::one());
    let mut r2_pow = r2.scale(quarter.clone());
    let mut total = Poly2::zero(center);
    for k in 0..=order / 2 {
        let mut c = factorial::<T>(order - k) / (factorial::<T>(k + 1) * factorial::<T>(order + 1));
        if k % 2 == 1 {
            c = -c;
        }
        let term = r2_pow.mul(&lap_k).expect("shared center").scale(c);
        total = total.add(&term).expect("shared center");
        lap_k = lap_k.laplacian();
        r2_pow = r2_pow.mul(&r2).expect("shared center").scale(quarter.clone());
    }
    total
}

/// `P_α` with `ΔP_α = (x - z)^α`: tabulated up to [`TABLE_MAX_ORDER`],
/// closed formula above.
pub fn anti_laplacian_monomial<T: Scalar>(alpha: MultiIndex, center: Vec2) -> Poly2<T> {
    if alpha.order() <= TABLE_MAX_ORDER {
        AntiLaplacianTable.row(alpha.to_index()).expect("tabulated").to_poly(center)
    } else {
        anti_laplacian_formula(alpha, center)
    }
}

impl<T: Scalar> Poly2<T> {
    /// A polynomial `P` with `ΔP = self` and `deg P = deg self + 2`.
    pub fn anti_laplacian(&self) -> Self {
        let center = self.center();
        let mut acc: Vec<(usize, T)> = Vec::new();
        for (alpha, c) in self.terms() {
            let p = anti_laplacian_monomial::<T>(alpha, center);
            acc.extend(p.indexed_terms().iter().map(|(k, v)| (*k, v.clone() * c.clone())));
        }
        Poly2::from_indexed(center, acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn rat_mono(a1: u32, a2: u32) -> Poly2<Rational> {
        Poly2::monomial(Vec2::ZERO, MultiIndex::new(a1, a2), Rational::from_integer(1))
    }

    #[test]
    fn known_rows() {
        let p: Poly2<Rational> = anti_laplacian_monomial(MultiIndex::new(0, 0), Vec2::ZERO);
        assert_eq!(p, Poly2::from_indexed(Vec2::ZERO, [(3, Rational::new(1, 4)), (5, Rational::new(1, 4))]));

        let p: Poly2<Rational> = anti_laplacian_monomial(MultiIndex::new(2, 3), Vec2::ZERO);
        let expected = [(29, -11), (31, 55), (33, 63), (35, -3)].map(|(k, c)| (k, Rational::new(c, 1920)));
        assert_eq!(p, Poly2::from_indexed(Vec2::ZERO, expected));

        let p: Poly2<Rational> = anti_laplacian_monomial(MultiIndex::new(5, 5), Vec2::ZERO);
        let expected = [(79, 3), (81, -55), (83, 198), (85, 198), (87, -55), (89, 3)].map(|(k, c)| (k, Rational::new(c, 16632)));
        assert_eq!(p, Poly2::from_indexed(Vec2::ZERO, expected));
    }

    #[test]
    fn every_row_is_an_exact_anti_laplacian() {
        for row in AntiLaplacianTable.rows() {
            let p: Poly2<Rational> = row.to_poly(Vec2::ZERO);
            assert_eq!(p.laplacian(), rat_mono(row.alpha.a1, row.alpha.a2), "row {:?}", row.alpha);
            assert_eq!(p.degree(), Some(row.alpha.order() + 2));
        }
    }

    #[test]
    fn every_row_matches_the_formula() {
        for row in AntiLaplacianTable.rows() {
            let table: Poly2<Rational> = row.to_poly(Vec2::ZERO);
            let formula: Poly2<Rational> = anti_laplacian_formula(row.alpha, Vec2::ZERO);
            assert_eq!(table, formula, "row {:?}", row.alpha);
        }
    }

    #[test]
    fn alternating_sums_vanish() {
        for row in AntiLaplacianTable.rows() {
            assert_eq!(row.alternating_numerator_sum(), 0, "row {:?}", row.alpha);
        }
    }

    #[test]
    fn formula_beyond_the_table_is_exact() {
        for order in 11..=14u32 {
            for a2 in 0..=order {
                let alpha = MultiIndex::new(order - a2, a2);
                let p: Poly2<Rational> = anti_laplacian_monomial(alpha, Vec2::ZERO);
                assert_eq!(p.laplacian(), rat_mono(alpha.a1, alpha.a2));
            }
        }
    }

    #[test]
    fn constant_gives_quarter_radius_squared() {
        let p = Poly2::constant(Vec2::new(0.5, 0.5), 1.0).anti_laplacian();
        assert_eq!(p.coeff(MultiIndex::new(2, 0)), 0.25);
        assert_eq!(p.coeff(MultiIndex::new(0, 2)), 0.25);
        assert_eq!(p.nnz(), 2);
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = Poly2<f64>> {
        let n = ((max_deg + 1) * (max_deg + 2) / 2) as usize;
        proptest::collection::vec(-1.0f64..1.0, n).prop_map(|cs| Poly2::from_indexed(Vec2::new(0.1, 0.2), cs.into_iter().enumerate()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn laplacian_inverts_anti_laplacian(p in arb_poly(12)) {
            let back = p.anti_laplacian().laplacian();
            let scale = p.max_abs_coeff().max(1.0);
            for (alpha, c) in p.terms() {
                prop_assert!((back.coeff(alpha) - c).abs() <= 1e-13 * scale);
            }
        }

        #[test]
        fn anti_laplacian_is_linear(p in arb_poly(6), q in arb_poly(6), a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let lhs = p.scale(a).add(&q.scale(b)).unwrap().anti_laplacian();
            let rhs = p.anti_laplacian().scale(a).add(&q.anti_laplacian().scale(b)).unwrap();
            let diff = lhs.sub(&rhs).unwrap();
            prop_assert!(diff.max_abs_coeff() < 1e-12);
        }
    }
}
