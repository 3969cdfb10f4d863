//! Boundary-reduced quadrature for implicitly defined finite element
//! functions on curvilinear polygons.
//!
//! The crate evaluates `∫_K v w dx` and `∫_K ∇v·∇w dx` for functions whose
//! Laplacian is a polynomial and whose boundary trace is given, without ever
//! sampling the interior of the cell `K`. Every volume integral is reduced to
//! boundary quadratures on a Kress-graded trapezoid grid:
//!
//! - [`polyalg`]: sparse bivariate polynomials in a shifted monomial basis,
//!   anti-Laplacians and boundary-reduced polynomial integrals;
//! - [`cellgeom`]: curvilinear polygons with smooth parameterized edges;
//! - [`kressquad`]: graded quadrature nodes and weights on the boundary;
//! - [`nystrom`]: the second-kind integral equation behind the
//!   Neumann-to-Dirichlet map;
//! - [`harmonic`]: harmonic conjugates, Dirichlet-to-Neumann maps and
//!   anti-Laplacians of harmonic functions;
//! - [`vmspace`]: the local space and its L² / H¹ products.
//!
//! Polynomial algebra is generic over the coefficient scalar so the tabulated
//! anti-Laplacians can be verified in exact rational arithmetic; everything
//! that touches quadrature works in `f64`.
//!
//! ```
//! use curvquad::cellgeom::Cell;
//! use curvquad::nystrom::SolverOptions;
//! use curvquad::polyalg::MultiIndex;
//! use curvquad::vmspace::{make_monomial_bubble, make_vertex_fn, CellQuadrature};
//!
//! let cell = Cell::puzzle(0.22, 0.17)?;
//! let quad = CellQuadrature::new(&cell, 32, 7, SolverOptions::default())?;
//! let v0 = make_vertex_fn(&cell, 0)?;
//! let bubble = make_monomial_bubble(&cell, MultiIndex::new(0, 0));
//! let mass = quad.l2_product(&v0, &bubble)?;
//! let stiffness = quad.h1_product(&v0, &v0)?;
//! assert!(mass > 0.0 && stiffness > 0.0);
//! # Ok::<(), curvquad::Error>(())
//! ```

pub mod cellgeom;
pub mod error;
pub mod harmonic;
pub mod kressquad;
pub mod nystrom;
pub mod polyalg;
pub mod scalar;
pub mod trace;
pub mod vec2;
pub mod vmspace;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use vec2::Vec2;

/// Floating point polynomial used by all quadrature code.
pub type Poly = polyalg::Poly2<f64>;
/// Single precision polynomial.
pub type Poly32 = polyalg::Poly2<f32>;
/// Exact rational polynomial, used to verify tabulated anti-Laplacians.
pub type ExactPoly = polyalg::Poly2<Rational>;
