//! Coefficient scalars for polynomial algebra.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Exact rational numbers. `i128` is wide enough for every anti-Laplacian
/// coefficient up to total degree 20.
pub type Rational = num_rational::Ratio<i128>;

/// Anything a polynomial coefficient can be: `f32`, `f64`, [`Rational`].
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + FromPrimitive + Send + Sync {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("numerator in range") / Self::from_i64(den).expect("denominator in range")
    }

    fn from_count(n: u32) -> Self {
        Self::from_u32(n).expect("small integer in range")
    }
}

impl<T> Scalar for T where T: Num + Clone + Debug + Neg<Output = T> + FromPrimitive + Send + Sync {}

/// Lossy conversion of an exact rational to `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}
