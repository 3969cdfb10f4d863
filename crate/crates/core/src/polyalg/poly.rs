use std::collections::BTreeMap;

use super::multiindex::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Sparse polynomial `Σ c_α (x - z)^α` about a center `z`.
///
/// Terms are kept sorted by linear index with no explicit zeros, so the zero
/// polynomial has no terms and no degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T> {
    center: Vec2,
    terms: Vec<(usize, T)>,
}

impl<T: Scalar> Poly2<T> {
    pub fn zero(center: Vec2) -> Self {
        Self { center, terms: Vec::new() }
    }

    pub fn constant(center: Vec2, c: T) -> Self {
        Self::monomial(center, MultiIndex::new(0, 0), c)
    }

    pub fn monomial(center: Vec2, alpha: MultiIndex, c: T) -> Self {
        Self::from_indexed(center, [(alpha.to_index(), c)])
    }

    /// Builds a polynomial from `(α, c)` pairs; repeated multiindices are summed.
    pub fn from_terms(center: Vec2, terms: impl IntoIterator<Item = (MultiIndex, T)>) -> Self {
        Self::from_indexed(center, terms.into_iter().map(|(a, c)| (a.to_index(), c)))
    }

    /// Builds a polynomial from `(k, c)` pairs keyed by linear index.
    pub fn from_indexed(center: Vec2, terms: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (k, c) in terms {
            let slot = acc.entry(k).or_insert_with(T::zero);
            *slot = slot.clone() + c;
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { center, terms }
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) coefficients.
    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms().map(|(a, _)| a.order()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &T)> + '_ {
        self.terms.iter().map(|(k, c)| (MultiIndex::from_index(*k), c))
    }

    pub fn indexed_terms(&self) -> &[(usize, T)] {
        &self.terms
    }

    pub fn coeff(&self, alpha: MultiIndex) -> T {
        let k = alpha.to_index();
        match self.terms.binary_search_by_key(&k, |(i, _)| *i) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => T::zero(),
        }
    }

    fn check_center(&self, other: &Self) -> Result<()> {
        if self.center == other.center {
            Ok(())
        } else {
            Err(Error::CenterMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        Ok(Self::from_indexed(self.center, self.terms.iter().chain(&other.terms).cloned()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_indexed(self.center, self.terms.iter().map(|(k, c)| (*k, c.clone() * s.clone())))
    }

    /// Product via a double loop over the non-zero coefficients of both factors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_center(other)?;
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            let alpha = MultiIndex::from_index(*ka);
            for (kb, cb) in &other.terms {
                let gamma = alpha + MultiIndex::from_index(*kb);
                let slot = acc.entry(gamma.to_index()).or_insert_with(T::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        Ok(Self::from_indexed(self.center, acc))
    }

    /// Formal partial derivatives `(∂/∂x1, ∂/∂x2)`.
    pub fn grad(&self) -> (Self, Self) {
        let mut dx = Vec::new();
        let mut dy = Vec::new();
        for (a, c) in self.terms() {
            if a.a1 > 0 {
                dx.push((MultiIndex::new(a.a1 - 1, a.a2), c.clone() * T::from_count(a.a1)));
            }
            if a.a2 > 0 {
                dy.push((MultiIndex::new(a.a1, a.a2 - 1), c.clone() * T::from_count(a.a2)));
            }
        }
        (Self::from_terms(self.center, dx), Self::from_terms(self.center, dy))
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Vec::new();
        for (a, c) in self.terms() {
            if a.a1 > 1 {
                out.push((MultiIndex::new(a.a1 - 2, a.a2), c.clone() * T::from_count(a.a1 * (a.a1 - 1))));
            }
            if a.a2 > 1 {
                out.push((MultiIndex::new(a.a1, a.a2 - 2), c.clone() * T::from_count(a.a2 * (a.a2 - 1))));
            }
        }
        Self::from_terms(self.center, out)
    }

    /// Coefficient-wise conversion to another scalar type.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly2<U> {
        Poly2::from_indexed(self.center, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }
}

impl Poly2<f64> {
    /// Affine function `value + grad·(x - center)`.
    pub fn affine(center: Vec2, value: f64, grad: Vec2) -> Self {
        Self::from_terms(
            center,
            [
                (MultiIndex::new(0, 0), value),
                (MultiIndex::new(1, 0), grad.x),
                (MultiIndex::new(0, 1), grad.y),
            ],
        )
    }

    /// `x^α` about the origin, re-expanded about `center`.
    pub fn absolute_monomial(center: Vec2, alpha: MultiIndex, c: f64) -> Self {
        Self::monomial(Vec2::ZERO, alpha, c).recentered(center)
    }

    pub fn eval(&self, x: Vec2) -> f64 {
        let Some(deg) = self.degree() else {
            return 0.0;
        };
        let d = x - self.center;
        let px = powers(d.x, deg);
        let py = powers(d.y, deg);
        self.terms().map(|(a, c)| c * px[a.a1 as usize] * py[a.a2 as usize]).sum()
    }

    pub fn grad_at(&self, x: Vec2) -> Vec2 {
        let (gx, gy) = self.grad();
        Vec2::new(gx.eval(x), gy.eval(x))
    }

    /// Same polynomial expanded about a new center.
    pub fn recentered(&self, center: Vec2) -> Self {
        if center == self.center {
            return self.clone();
        }
        // (x - z)^α = ((x - z') + s)^α with s = z' - z
        let s = center - self.center;
        let deg = self.degree().unwrap_or(0);
        let sx = powers(s.x, deg);
        let sy = powers(s.y, deg);
        let mut out = Vec::new();
        for (a, c) in self.terms() {
            for i in 0..=a.a1 {
                let bx = binomial(a.a1, i) * sx[(a.a1 - i) as usize];
                for j in 0..=a.a2 {
                    let by = binomial(a.a2, j) * sy[(a.a2 - j) as usize];
                    out.push((MultiIndex::new(i, j), c * bx * by));
                }
            }
        }
        let mut p = Self::from_terms(center, out);
        p.terms.retain(|(_, c)| *c != 0.0);
        p
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}

fn powers(v: f64, deg: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut acc = 1.0;
    for _ in 0..=deg {
        out.push(acc);
        acc *= v;
    }
    out
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    const Z: Vec2 = Vec2::new(0.3, -0.2);

    fn mono(a1: u32, a2: u32, c: f64) -> Poly2<f64> {
        Poly2::monomial(Z, MultiIndex::new(a1, a2), c)
    }

    #[test]
    fn zero_has_no_degree() {
        let p = Poly2::<f64>::zero(Z);
        assert_eq!(p.degree(), None);
        assert!(mono(1, 0, 0.0).is_zero());
        assert_eq!(mono(2, 3, 1.5).degree(), Some(5));
    }

    #[test]
    fn duplicates_are_accumulated() {
        let p = Poly2::from_terms(Z, [(MultiIndex::new(1, 1), 2.0), (MultiIndex::new(1, 1), -2.0), (MultiIndex::new(0, 1), 1.0)]);
        assert_eq!(p.nnz(), 1);
        assert_eq!(p.coeff(MultiIndex::new(0, 1)), 1.0);
    }

    #[test]
    fn product_identities() {
        let q = mono(2, 1, 3.0).add(&mono(0, 4, -1.0)).unwrap();
        assert_eq!(Poly2::constant(Z, 1.0).mul(&q).unwrap(), q);
        assert_eq!(mono(1, 0, 1.0).mul(&mono(0, 1, 1.0)).unwrap(), mono(1, 1, 1.0));
    }

    #[test]
    fn mismatched_centers_rejected() {
        let p = Poly2::constant(Vec2::ZERO, 1.0);
        assert_eq!(p.mul(&mono(1, 0, 1.0)), Err(Error::CenterMismatch));
        assert_eq!(p.add(&mono(1, 0, 1.0)), Err(Error::CenterMismatch));
    }

    #[test]
    fn gradient_power_rule() {
        let (gx, gy) = Poly2::constant(Z, 4.0).grad();
        assert!(gx.is_zero() && gy.is_zero());
        let (gx, gy) = mono(2, 3, 1.0).grad();
        assert_eq!(gx, mono(1, 3, 2.0));
        assert_eq!(gy, mono(2, 2, 3.0));
    }

    #[test]
    fn laplacian_examples() {
        let r2 = mono(2, 0, 0.25).add(&mono(0, 2, 0.25)).unwrap();
        assert_eq!(r2.laplacian(), Poly2::constant(Z, 1.0));
        assert!(mono(1, 1, 2.0).laplacian().is_zero());
    }

    #[test]
    fn exact_rational_arithmetic() {
        let half = Rational::new(1, 2);
        let p = Poly2::monomial(Vec2::ZERO, MultiIndex::new(3, 0), half);
        assert_eq!(p.laplacian(), Poly2::monomial(Vec2::ZERO, MultiIndex::new(1, 0), Rational::from_integer(3)));
    }

    #[test]
    fn recentering_preserves_values() {
        let p = mono(3, 2, 1.3).add(&mono(0, 1, -0.7)).unwrap();
        let q = p.recentered(Vec2::new(1.1, 0.4));
        for x in [Vec2::new(0.0, 0.0), Vec2::new(-1.0, 2.0), Vec2::new(0.5, 0.25)] {
            assert!((p.eval(x) - q.eval(x)).abs() < 1e-12);
        }
    }

    fn dense_product(p: &Poly2<f64>, q: &Poly2<f64>, x: Vec2) -> f64 {
        // term-by-term expansion evaluated pointwise
        let mut s = 0.0;
        for (a, c) in p.terms() {
            for (b, d) in q.terms() {
                s += c * d * mono(a.a1 + b.a1, a.a2 + b.a2, 1.0).eval(x);
            }
        }
        s
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = Poly2<f64>> {
        let n = ((max_deg + 1) * (max_deg + 2) / 2) as usize;
        proptest::collection::vec(-2.0f64..2.0, n).prop_map(move |cs| Poly2::from_indexed(Z, cs.into_iter().enumerate()))
    }

    proptest! {
        #[test]
        fn product_matches_dense_expansion(p in arb_poly(3), q in arb_poly(3), x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let pt = Vec2::new(x, y);
            let prod = p.mul(&q).unwrap();
            prop_assert!((prod.eval(pt) - dense_product(&p, &q, pt)).abs() < 1e-11);
            prop_assert!((prod.eval(pt) - p.eval(pt) * q.eval(pt)).abs() < 1e-11);
            if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
                prop_assert_eq!(prod.degree(), Some(dp + dq));
            }
        }

        #[test]
        fn gradient_matches_finite_differences(p in arb_poly(5), x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let h = 1e-5;
            let pt = Vec2::new(x, y);
            let g = p.grad_at(pt);
            let fx = (p.eval(pt + Vec2::new(h, 0.0)) - p.eval(pt - Vec2::new(h, 0.0))) / (2.0 * h);
            let fy = (p.eval(pt + Vec2::new(0.0, h)) - p.eval(pt - Vec2::new(0.0, h))) / (2.0 * h);
            prop_assert!((g.x - fx).abs() < 1e-8);
            prop_assert!((g.y - fy).abs() < 1e-8);
        }
    }
}
