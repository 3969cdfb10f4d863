//! Sparse bivariate polynomials in the shifted monomial basis `(x - z)^α`.
//!
//! Coefficients are stored as `(k, c)` pairs sorted by the linear index `k`
//! of the multiindex enumeration in [`multiindex`]. Anti-Laplacians come from
//! an exact rational table for `|α| ≤ 10` and from the closed formula above
//! that.

mod antilap;
mod multiindex;
mod poly;
mod table;
mod volume;

pub use antilap::{anti_laplacian_formula, anti_laplacian_monomial, AntiLaplacianRow, AntiLaplacianTable, TABLE_MAX_ORDER};
pub use multiindex::{index_to_mi, mi_to_index, MultiIndex};
pub use poly::Poly2;
pub use volume::{poly_eval, poly_normal_derivative_trace, poly_trace, poly_volume_integral};
