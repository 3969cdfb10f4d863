//! Local functions with polynomial Laplacian and prescribed trace, and
//! their L² and H¹ products computed from boundary data only.
//!
//! A function `v` with `Δv = p` and trace `f` splits as `v = P + (v - P)`
//! where `ΔP = p` is a polynomial and `v - P` is harmonic with trace
//! `f - P`. Products reduce to Green's identities over these pieces; the
//! harmonic pieces need Neumann solves, which are cached per function.

mod basis;
mod function;
mod products;

pub use basis::{
    arc_basis, fictitious_point, make_arc_linear_fn, make_arc_linear_fn_with, make_bubble, make_edge_fn_product,
    make_edge_fn_product_with, make_monomial_bubble, make_vertex_fn, make_vertex_fn_with, vertex_basis, ApexSide,
};
pub use function::{EdgeSampler, TraceSpec, VmFunction};
pub use products::{assemble_local_matrix, h1_product, l2_product, CellQuadrature, LocalMatrix, ProductKind};
